#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tarjim::metrics {

void MetricConfig::validate() const {
  if (bleu_max_order < 1 || chrf_char_order < 1 || chrf_word_order < 0) {
    fail(ErrorCode::Config, "metric orders must be >= 1");
  }
  if (!(chrf_beta > 0)) fail(ErrorCode::Config, "chrF beta must be > 0");
}

std::string MetricConfig::fingerprint() const {
  char beta[32];
  std::snprintf(beta, sizeof beta, "%g", chrf_beta);
  const std::string kase = lowercase ? "lc" : "mixed";
  return "bleu:nrefs:1|case:" + kase + "|tok:13a|smooth:" +
         (bleu_smoothing == Smoothing::ExpFloor ? "exp" : "none") + "|order:" + std::to_string(bleu_max_order) +
         ";chrf:c" + std::to_string(chrf_char_order) + "w" + std::to_string(chrf_word_order) + "b" + beta +
         "|case:" + kase;
}

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_period_comma(char32_t c) { return c == U'.' || c == U','; }

// Character class of the first 13a substitution rule:
// [{-~] [[-`] [ -&] [(-+] [:-@] and '/'.
bool is_general_punct(char32_t c) {
  return (c >= 0x7B && c <= 0x7E) || (c >= 0x5B && c <= 0x60) || (c >= 0x20 && c <= 0x26) ||
         (c >= 0x28 && c <= 0x2B) || (c >= 0x3A && c <= 0x40) || c == 0x2F;
}

// Emulates a left-to-right, non-overlapping regex substitution of a
// two-codepoint pattern (A)(B).
template <typename MatchA, typename MatchB>
std::u32string sub_pair(const std::u32string& s, MatchA a, MatchB b, std::u32string_view before,
                        std::u32string_view middle, std::u32string_view after) {
  std::u32string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && a(s[i]) && b(s[i + 1])) {
      out += before;
      out.push_back(s[i]);
      out += middle;
      out.push_back(s[i + 1]);
      out += after;
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

std::string rstrip(std::string_view s) {
  const auto cps = text::decode(s);
  std::size_t end = cps.size();
  while (end > 0 && text::is_space(cps[end - 1])) --end;
  return text::encode(std::u32string_view(cps).substr(0, end));
}

std::string preprocess_bleu(std::string_view sent, const MetricConfig& cfg) {
  std::string s = cfg.lowercase ? text::to_lower(sent) : std::string(sent);
  return rstrip(s);
}

using Counts = std::unordered_map<std::string, std::uint64_t>;

Counts word_ngrams(const std::vector<std::string>& tokens, int min_order, int max_order) {
  Counts counts;
  for (int n = min_order; n <= max_order; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (int k = 1; k < n; ++k) {
        key.push_back(' ');
        key += tokens[i + k];
      }
      ++counts[key];
    }
  }
  return counts;
}

int order_of(const std::string& key) {
  return 1 + static_cast<int>(std::count(key.begin(), key.end(), ' '));
}

}  // namespace

std::vector<std::string> tokenize_v13a(std::string_view input) {
  std::string line(input);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  const std::u32string padded = U" " + text::decode(line) + U" ";

  std::u32string s;
  s.reserve(padded.size() * 2);
  for (char32_t c : padded) {
    if (is_general_punct(c)) {
      s.push_back(U' ');
      s.push_back(c);
      s.push_back(U' ');
    } else {
      s.push_back(c);
    }
  }
  auto not_digit = [](char32_t c) { return !is_digit(c); };
  auto dash = [](char32_t c) { return c == U'-'; };
  s = sub_pair(s, not_digit, is_period_comma, U"", U" ", U" ");
  s = sub_pair(s, is_period_comma, not_digit, U" ", U" ", U"");
  s = sub_pair(s, is_digit, dash, U"", U" ", U" ");

  std::vector<std::string> tokens;
  std::string current;
  for (char32_t c : s) {
    if (text::is_space(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      text::append_utf8(current, c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

void check_corpus(std::span<const std::string> hyps, std::span<const std::string> refs) {
  if (hyps.empty()) fail(ErrorCode::InvalidArgument, "empty corpus");
  if (hyps.size() != refs.size()) {
    fail(ErrorCode::InvalidArgument, "hypothesis/reference count mismatch: " + std::to_string(hyps.size()) +
                                         " vs " + std::to_string(refs.size()));
  }
}

}  // namespace

BleuScore corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                      const MetricConfig& cfg) {
  cfg.validate();
  check_corpus(hyps, refs);
  const int max_order = cfg.bleu_max_order;
  BleuScore out;
  out.correct.assign(max_order, 0);
  out.total.assign(max_order, 0);

  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto hyp_tokens = tokenize_v13a(preprocess_bleu(hyps[i], cfg));
    const auto ref_tokens = tokenize_v13a(preprocess_bleu(refs[i], cfg));
    out.hyp_len += hyp_tokens.size();
    out.ref_len += ref_tokens.size();
    const Counts ref_counts = word_ngrams(ref_tokens, 1, max_order);
    for (const auto& [ngram, count] : word_ngrams(hyp_tokens, 1, max_order)) {
      const int n = order_of(ngram) - 1;
      out.total[n] += count;
      if (auto it = ref_counts.find(ngram); it != ref_counts.end()) out.correct[n] += std::min(count, it->second);
    }
  }

  out.brevity_penalty = 1.0;
  if (out.hyp_len < out.ref_len) {
    out.brevity_penalty = out.hyp_len > 0
        ? std::exp(1.0 - static_cast<double>(out.ref_len) / static_cast<double>(out.hyp_len))
        : 0.0;
  }
  out.precisions.assign(max_order, 0.0);
  if (std::all_of(out.correct.begin(), out.correct.end(), [](auto c) { return c == 0; })) {
    out.score = 0.0;
    return out;
  }

  // Precisions on the 0-100 scale while scoring, matching the reference
  // arithmetic; reported as fractions.
  std::vector<double> pct(max_order, 0.0);
  double smooth = 1.0;
  for (int n = 0; n < max_order; ++n) {
    if (out.total[n] == 0) break;
    if (out.correct[n] == 0) {
      if (cfg.bleu_smoothing == Smoothing::ExpFloor) {
        smooth *= 2.0;
        pct[n] = 100.0 / (smooth * static_cast<double>(out.total[n]));
      }
    } else {
      pct[n] = 100.0 * static_cast<double>(out.correct[n]) / static_cast<double>(out.total[n]);
    }
  }
  double log_sum = 0.0;
  for (double p : pct) log_sum += p == 0.0 ? -9999999999.0 : std::log(p);
  out.score = out.brevity_penalty * std::exp(log_sum / max_order);
  for (int n = 0; n < max_order; ++n) out.precisions[n] = pct[n] / 100.0;
  return out;
}

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

// Splits words and detaches a single leading or trailing ASCII punctuation mark.
std::vector<std::string> chrf_words(std::string_view sent) {
  std::vector<std::string> out;
  for (auto w : text::split_words(sent)) {
    if (text::codepoint_count(w) == 1) {
      out.emplace_back(w);
    } else if (is_ascii_punct(static_cast<unsigned char>(w.back()))) {
      out.emplace_back(w.substr(0, w.size() - 1));
      out.emplace_back(w.substr(w.size() - 1));
    } else if (is_ascii_punct(static_cast<unsigned char>(w.front()))) {
      out.emplace_back(w.substr(0, 1));
      out.emplace_back(w.substr(1));
    } else {
      out.emplace_back(w);
    }
  }
  return out;
}

using CharCounts = std::unordered_map<std::u32string_view, std::uint64_t>;

CharCounts char_ngrams(const std::u32string& chars, int n) {
  CharCounts counts;
  const std::u32string_view v(chars);
  for (std::size_t i = 0; i + n <= v.size(); ++i) ++counts[v.substr(i, n)];
  return counts;
}

std::u32string strip_spaces(std::string_view s) {
  std::u32string out;
  for (char32_t c : text::decode(s)) {
    if (!text::is_space(c)) out.push_back(c);
  }
  return out;
}

struct OrderStats {
  std::uint64_t hyp = 0, ref = 0, match = 0;
};

template <typename Map>
void accumulate(const Map& hyp, const Map& ref, OrderStats& st) {
  std::uint64_t hyp_count = 0, match = 0, ref_count = 0;
  for (const auto& [ng, c] : hyp) {
    hyp_count += c;
    if (auto it = ref.find(ng); it != ref.end()) match += std::min(c, it->second);
  }
  for (const auto& [ng, c] : ref) ref_count += c;
  // Hypothesis n-grams are not counted when the reference has none.
  st.hyp += ref.empty() ? 0 : hyp_count;
  st.ref += ref_count;
  st.match += match;
}

}  // namespace

ChrfScore corpus_chrf_pp(std::span<const std::string> hyps, std::span<const std::string> refs,
                         const MetricConfig& cfg) {
  cfg.validate();
  check_corpus(hyps, refs);
  const int orders = cfg.chrf_char_order + cfg.chrf_word_order;
  std::vector<OrderStats> stats(orders);

  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::string hyp = cfg.lowercase ? text::to_lower(hyps[i]) : hyps[i];
    const std::string ref = cfg.lowercase ? text::to_lower(refs[i]) : refs[i];
    const auto hyp_chars = strip_spaces(hyp);
    const auto ref_chars = strip_spaces(ref);
    for (int n = 1; n <= cfg.chrf_char_order; ++n) {
      accumulate(char_ngrams(hyp_chars, n), char_ngrams(ref_chars, n), stats[n - 1]);
    }
    if (cfg.chrf_word_order > 0) {
      const auto hw = chrf_words(hyp);
      const auto rw = chrf_words(ref);
      for (int n = 1; n <= cfg.chrf_word_order; ++n) {
        accumulate(word_ngrams(hw, n, n), word_ngrams(rw, n, n), stats[cfg.chrf_char_order + n - 1]);
      }
    }
  }

  constexpr double eps = 1e-16;
  const double factor = cfg.chrf_beta * cfg.chrf_beta;
  double avg_prec = 0.0, avg_rec = 0.0;
  int effective = 0;
  for (const auto& st : stats) {
    const double prec = st.hyp > 0 ? static_cast<double>(st.match) / static_cast<double>(st.hyp) : eps;
    const double rec = st.ref > 0 ? static_cast<double>(st.match) / static_cast<double>(st.ref) : eps;
    if (st.hyp > 0 && st.ref > 0) {
      avg_prec += prec;
      avg_rec += rec;
      ++effective;
    }
  }
  ChrfScore out;
  if (effective > 0) {
    avg_prec /= effective;
    avg_rec /= effective;
  }
  out.avg_precision = avg_prec;
  out.avg_recall = avg_rec;
  if (avg_prec + avg_rec > 0.0) {
    out.score = 100.0 * (1 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec);
  }
  return out;
}

}  // namespace tarjim::metrics
