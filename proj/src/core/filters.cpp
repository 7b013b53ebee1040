#include "core/filters.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tarjim::filters {

void FilterConfig::validate() const {
  if (min_tokens < 1) fail(ErrorCode::Config, "min_tokens must be >= 1");
  if (!(max_char_ratio > 1.0)) fail(ErrorCode::Config, "max_char_ratio must be > 1");
  if (ratio_min_chars < 0) fail(ErrorCode::Config, "ratio_min_chars must be >= 0");
  auto frac_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  if (!frac_ok(arabic_letter_fraction_min) || !frac_ok(latin_letter_fraction_min)) {
    fail(ErrorCode::Config, "letter fractions must lie in (0, 1]");
  }
}

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::MinTokens: return "min_tokens";
    case Rule::LanguageMismatch: return "language_mismatch";
    case Rule::LengthRatio: return "length_ratio";
    case Rule::Duplicate: return "duplicate";
    case Rule::None: return "none";
  }
  return "none";
}

std::uint64_t FilterReport::rejected_total() const {
  std::uint64_t n = 0;
  for (auto c : rejected) n += c;
  return n;
}

std::string normalize_text(std::string_view s) { return text::normalize(s); }

double script_fraction(std::string_view s, Origin script) {
  std::size_t letters = 0;
  std::size_t in_script = 0;
  for (char32_t cp : text::decode(s)) {
    if (!text::is_letter(cp)) continue;
    ++letters;
    if (script == Origin::Arabic ? text::is_arabic_script(cp) : text::is_latin_script(cp)) ++in_script;
  }
  if (letters == 0) return -1.0;
  return static_cast<double>(in_script) / static_cast<double>(letters);
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

FilterDecision min_token_filter(const ParallelPair& p, const FilterConfig& cfg) {
  const auto min = static_cast<std::size_t>(cfg.min_tokens);
  const auto a = text::word_count(p.ar);
  if (a < min) return FilterDecision::reject(Rule::MinTokens, "ar has " + std::to_string(a) + " tokens");
  const auto e = text::word_count(p.en);
  if (e < min) return FilterDecision::reject(Rule::MinTokens, "en has " + std::to_string(e) + " tokens");
  return FilterDecision::accept();
}

FilterDecision script_language_filter(const ParallelPair& p, const FilterConfig& cfg) {
  const double a = script_fraction(p.ar, Origin::Arabic);
  if (a < 0) return FilterDecision::reject(Rule::LanguageMismatch, "ar has no letters");
  if (a < cfg.arabic_letter_fraction_min) {
    return FilterDecision::reject(Rule::LanguageMismatch, "ar script fraction " + fmt_double(a));
  }
  const double e = script_fraction(p.en, Origin::English);
  if (e < 0) return FilterDecision::reject(Rule::LanguageMismatch, "en has no letters");
  if (e < cfg.latin_letter_fraction_min) {
    return FilterDecision::reject(Rule::LanguageMismatch, "en script fraction " + fmt_double(e));
  }
  return FilterDecision::accept();
}

FilterDecision length_ratio_filter(const ParallelPair& p, const FilterConfig& cfg) {
  const auto a = text::codepoint_count(normalize_text(p.ar));
  const auto e = text::codepoint_count(normalize_text(p.en));
  const auto longer = std::max(a, e);
  const auto shorter = std::min(a, e);
  if (longer < static_cast<std::size_t>(cfg.ratio_min_chars)) return FilterDecision::accept();
  if (shorter == 0) return FilterDecision::reject(Rule::LengthRatio, "one side is empty");
  const double ratio = static_cast<double>(longer) / static_cast<double>(shorter);
  if (ratio > cfg.max_char_ratio) {
    return FilterDecision::reject(Rule::LengthRatio, "char ratio " + fmt_double(ratio));
  }
  return FilterDecision::accept();
}

std::string Deduplicator::key(const ParallelPair& p) const {
  std::string en = normalize_text(p.en);
  if (lowercase_en_) en = text::to_lower(en);
  std::string k = normalize_text(p.ar);
  k.push_back('\x1f');
  k += en;
  return k;
}

FilterDecision Deduplicator::check(const ParallelPair& p) {
  if (seen_.insert(key(p)).second) return FilterDecision::accept();
  return FilterDecision::reject(Rule::Duplicate, "repeat of an earlier pair");
}

std::vector<FilterDecision> dedup_stage(std::span<const ParallelPair> pairs, const FilterConfig& cfg) {
  Deduplicator dedup(cfg);
  std::vector<FilterDecision> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(dedup.check(p));
  return out;
}

FilterDecision stateless_checks(const ParallelPair& p, const FilterConfig& cfg) {
  if (auto d = min_token_filter(p, cfg); !d.accepted()) return d;
  if (auto d = script_language_filter(p, cfg); !d.accepted()) return d;
  return length_ratio_filter(p, cfg);
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

std::size_t rule_index(Rule r) {
  return static_cast<std::size_t>(std::find(kRejectRules.begin(), kRejectRules.end(), r) -
                                  kRejectRules.begin());
}

}  // namespace

PipelineResult run_pipeline(std::span<const ParallelPair> pairs, const FilterConfig& cfg,
                            unsigned workers) {
  cfg.validate();
  PipelineResult result;
  result.decisions.resize(pairs.size());
  std::vector<std::string> keys(pairs.size());
  Deduplicator dedup(cfg);

  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    result.decisions[i] = stateless_checks(pairs[i], cfg);
    if (result.decisions[i].accepted()) keys[i] = dedup.key(pairs[i]);
  });

  // Serial pass in input order keeps first-occurrence semantics.
  std::unordered_set<std::string> seen;
  FilterReport& report = result.report;
  report.input_count = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    FilterDecision& d = result.decisions[i];
    if (d.accepted() && !seen.insert(std::move(keys[i])).second) {
      d = FilterDecision::reject(Rule::Duplicate, "repeat of an earlier pair");
    }
    if (d.accepted()) {
      ++report.accepted_count;
      result.accepted.push_back(pairs[i]);
    } else {
      const auto r = rule_index(d.rule);
      ++report.rejected[r];
      if (report.samples[r].size() < cfg.sample_limit) report.samples[r].push_back(pairs[i].id);
    }
  }
  return result;
}

}  // namespace tarjim::filters
