#include "core/benchkit.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tarjim::benchkit {

std::size_t ValidationReport::flag_count() const {
  return (balance_flag ? 1 : 0) + band_violations + duplicate_ids.size() + duplicate_texts.size();
}

ValidationReport validate_benchmark(std::span<const BenchmarkEntry> entries, const ValidationConfig& cfg) {
  ValidationReport r;
  r.pair_count = entries.size();
  std::unordered_set<std::string> ids, ar_texts, en_texts;
  for (const auto& e : entries) {
    const auto& p = e.pair;
    (p.origin == Origin::Arabic ? r.origin_ar : r.origin_en) += 1;

    const auto origin_words = text::word_count(p.origin == Origin::Arabic ? p.ar : p.en);
    const auto trans_words = text::word_count(p.origin == Origin::Arabic ? p.en : p.ar);
    if (origin_words >= cfg.band_min_words && origin_words <= cfg.band_max_words) {
      ++r.band_compliant;
    } else {
      ++r.band_violations;
      if (r.band_violators.size() < cfg.violator_limit) r.band_violators.push_back({p.id, p.origin, origin_words});
    }
    if (trans_words >= cfg.band_min_words && trans_words <= cfg.band_max_words) ++r.translation_in_band;

    if (!ids.insert(p.id).second) r.duplicate_ids.push_back(p.id);
    const bool ar_dup = !ar_texts.insert(text::normalize(p.ar)).second;
    const bool en_dup = !en_texts.insert(text::normalize(p.en)).second;
    if (ar_dup || en_dup) r.duplicate_texts.push_back(p.id);
  }
  r.balance_delta = r.origin_ar > r.origin_en ? r.origin_ar - r.origin_en : r.origin_en - r.origin_ar;
  r.balance_flag = r.balance_delta > cfg.balance_tolerance;
  r.domains = domain_distribution(entries);
  for (const auto& [d, n] : r.domains) {
    if (d != "unlabeled" && std::find(kReferenceDomains.begin(), kReferenceDomains.end(), d) == kReferenceDomains.end()) {
      r.uncatalogued_domains.push_back(d);
    }
  }
  return r;
}

std::map<std::string, std::size_t> domain_distribution(std::span<const BenchmarkEntry> entries) {
  std::map<std::string, std::size_t> hist;
  for (const auto& e : entries) {
    const auto& d = e.pair.domain;
    ++hist[d && !d->empty() ? *d : "unlabeled"];
  }
  return hist;
}

std::string domain_csv(const std::map<std::string, std::size_t>& histogram) {
  std::ostringstream out;
  out << "domain,count\n";
  for (const auto& [d, n] : histogram) {
    if (d.find_first_of(",\"") != std::string::npos) {
      std::string q;
      for (char c : d) {
        if (c == '"') q += '"';
        q += c;
      }
      out << '"' << q << '"';
    } else {
      out << d;
    }
    out << ',' << n << '\n';
  }
  return out.str();
}

std::string domain_bars(const std::map<std::string, std::size_t>& histogram, std::size_t width) {
  std::size_t max = 0, label = 0, total = 0;
  for (const auto& [d, n] : histogram) {
    max = std::max(max, n);
    label = std::max(label, text::codepoint_count(d));
    total += n;
  }
  std::ostringstream out;
  for (const auto& [d, n] : histogram) {
    const std::size_t bar = max == 0 ? 0 : (n * width + max / 2) / max;
    out << d << std::string(label - text::codepoint_count(d), ' ') << " | " << std::string(bar, '#') << ' ' << n
        << '\n';
  }
  out << "total " << total << '\n';
  return out.str();
}

std::vector<std::string> contamination_words(std::string_view s, Origin side) {
  std::string norm = text::normalize(s);
  if (side == Origin::English) norm = text::to_lower(norm);
  std::vector<std::string> out;
  for (auto w : text::split_words(norm)) out.emplace_back(w);
  return out;
}

std::uint64_t ngram_hash(std::span<const std::string> words) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (const auto& w : words) {
    for (unsigned char c : w) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    h ^= 0x1F;  // word boundary
    h *= 0x100000001B3ULL;
  }
  h ^= h >> 33;
  h *= 0xFF51AFD7ED558CCDULL;
  h ^= h >> 33;
  return h;
}

ContaminationIndex::ContaminationIndex(std::span<const BenchmarkEntry> entries, std::size_t n) : n_(n) {
  if (n < 3) fail(ErrorCode::Config, "contamination n-gram order must be >= 3");
  for (std::uint32_t i = 0; i < entries.size(); ++i) {
    ids_.push_back(entries[i].pair.id);
    for (Origin o : {Origin::Arabic, Origin::English}) {
      Side& side = o == Origin::Arabic ? ar_ : en_;
      side.words.push_back(contamination_words(o == Origin::Arabic ? entries[i].pair.ar : entries[i].pair.en, o));
      const auto& w = side.words.back();
      for (std::size_t p = 0; p + n <= w.size(); ++p) {
        side.postings[ngram_hash(std::span(w).subspan(p, n))].push_back({i, static_cast<std::uint32_t>(p)});
        ++ngrams_;
      }
    }
  }
}

void ContaminationIndex::scan(const ParallelPair& pair, std::vector<ContaminationHit>& out) const {
  scan_side(pair, Origin::Arabic, out);
  scan_side(pair, Origin::English, out);
}

void ContaminationIndex::scan_side(const ParallelPair& pair, Origin o, std::vector<ContaminationHit>& out) const {
  const Side& side = o == Origin::Arabic ? ar_ : en_;
  if (side.postings.empty()) return;
  const auto words = contamination_words(o == Origin::Arabic ? pair.ar : pair.en, o);
  if (words.size() < n_) return;

  // entry -> index into `out` of the hit opened for this pair
  std::unordered_map<std::uint32_t, std::size_t> open;
  for (std::size_t p = 0; p + n_ <= words.size(); ++p) {
    const auto window = std::span<const std::string>(words).subspan(p, n_);
    const auto it = side.postings.find(ngram_hash(window));
    if (it == side.postings.end()) continue;
    std::unordered_set<std::uint32_t> counted;
    for (const Posting& post : it->second) {
      const auto& bw = side.words[post.entry];
      if (!std::equal(window.begin(), window.end(), bw.begin() + post.pos)) continue;  // hash collision
      if (!counted.insert(post.entry).second) continue;
      auto [slot, inserted] = open.try_emplace(post.entry, out.size());
      if (inserted) {
        ContaminationHit hit;
        hit.benchmark_id = ids_[post.entry];
        hit.corpus_id = pair.id;
        hit.side = o;
        hit.ngram.assign(window.begin(), window.end());
        hit.benchmark_pos = post.pos;
        hit.corpus_pos = p;
        out.push_back(std::move(hit));
      }
      ++out[slot->second].shared_ngrams;
    }
  }
}

void sort_hits(std::vector<ContaminationHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const ContaminationHit& a, const ContaminationHit& b) {
    return std::tie(a.benchmark_id, a.corpus_id, a.side, a.corpus_pos) <
           std::tie(b.benchmark_id, b.corpus_id, b.side, b.corpus_pos);
  });
}

std::vector<ContaminationHit> contamination_scan(std::span<const ParallelPair> corpus,
                                                 std::span<const BenchmarkEntry> entries, std::size_t n,
                                                 unsigned workers) {
  const ContaminationIndex index(entries, n);
  workers = std::max(1u, workers);
  std::vector<std::vector<ContaminationHit>> shards(workers);
  {
    const std::size_t chunk = (corpus.size() + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(corpus.size(), w * chunk);
      const std::size_t end = std::min(corpus.size(), begin + chunk);
      auto job = [&, w, begin, end] {
        for (std::size_t i = begin; i < end; ++i) index.scan(corpus[i], shards[w]);
      };
      if (workers == 1) {
        job();
      } else {
        pool.emplace_back(job);
      }
    }
  }
  std::vector<ContaminationHit> hits;
  for (auto& s : shards) std::move(s.begin(), s.end(), std::back_inserter(hits));
  sort_hits(hits);
  return hits;
}

std::vector<ContaminationHit> contamination_scan_file(const std::filesystem::path& corpus, Format format,
                                                      std::span<const BenchmarkEntry> entries, std::size_t n) {
  const ContaminationIndex index(entries, n);
  PairReader reader(corpus, format);
  std::vector<ContaminationHit> hits;
  while (auto item = reader.next()) {
    if (auto* err = std::get_if<ReadError>(&*item)) {
      // Repeated corpus ids do not affect matching.
      if (err->reason == "duplicate_id") continue;
      fail(ErrorCode::Data, corpus.string() + ": " + err->message());
    }
    index.scan(std::get<BenchmarkEntry>(*item).pair, hits);
  }
  sort_hits(hits);
  return hits;
}

}  // namespace tarjim::benchkit
