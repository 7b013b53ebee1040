#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/corpus_io.hpp"

namespace tarjim::benchkit {

// Domain categories the reference benchmark is described as covering.
inline const std::vector<std::string> kReferenceDomains = {"scientific", "technical", "healthcare", "cultural",
                                                           "general"};

struct ValidationConfig {
  std::size_t balance_tolerance = 0;  // allowed |ar - en| origin count difference
  std::size_t band_min_words = 50;
  std::size_t band_max_words = 100;
  std::size_t violator_limit = 50;
};

struct BandViolator {
  std::string id;
  Origin side = Origin::Arabic;
  std::size_t words = 0;
  bool operator==(const BandViolator&) const = default;
};

struct ValidationReport {
  std::size_t pair_count = 0;
  std::size_t origin_ar = 0;
  std::size_t origin_en = 0;
  std::size_t balance_delta = 0;
  bool balance_flag = false;

  std::size_t band_compliant = 0;  // origin sides inside the band
  std::size_t band_violations = 0;
  std::vector<BandViolator> band_violators;  // first violator_limit
  std::size_t translation_in_band = 0;       // informational only

  std::vector<std::string> duplicate_ids;
  std::vector<std::string> duplicate_texts;  // ids whose normalized text repeats an earlier entry
  std::map<std::string, std::size_t> domains;
  std::vector<std::string> uncatalogued_domains;

  std::size_t flag_count() const;
};

ValidationReport validate_benchmark(std::span<const BenchmarkEntry> entries, const ValidationConfig& cfg = {});

std::map<std::string, std::size_t> domain_distribution(std::span<const BenchmarkEntry> entries);
std::string domain_csv(const std::map<std::string, std::size_t>& histogram);
std::string domain_bars(const std::map<std::string, std::size_t>& histogram, std::size_t width = 40);

// Word n-gram units used for contamination matching: normalized text split on
// whitespace; English is case-folded, Arabic left as is.
std::vector<std::string> contamination_words(std::string_view text, Origin side);

struct ContaminationHit {
  std::string benchmark_id;
  std::string corpus_id;
  Origin side = Origin::English;
  std::vector<std::string> ngram;  // first shared n-gram in corpus order
  std::size_t benchmark_pos = 0;
  std::size_t corpus_pos = 0;
  std::size_t shared_ngrams = 0;  // distinct corpus positions that match

  bool operator==(const ContaminationHit&) const = default;
};

// 64-bit hash index over every benchmark n-gram; memory is
// O(benchmark n-grams). Thread-safe for concurrent scans once built.
class ContaminationIndex {
 public:
  ContaminationIndex(std::span<const BenchmarkEntry> entries, std::size_t n);

  // Appends at most one hit per (benchmark entry, side) for this corpus pair.
  void scan(const ParallelPair& pair, std::vector<ContaminationHit>& out) const;
  std::size_t ngram_count() const { return ngrams_; }
  std::size_t n() const { return n_; }

 private:
  struct Posting {
    std::uint32_t entry;
    std::uint32_t pos;
  };
  struct Side {
    std::vector<std::vector<std::string>> words;  // per entry
    std::unordered_map<std::uint64_t, std::vector<Posting>> postings;
  };
  void scan_side(const ParallelPair& pair, Origin side, std::vector<ContaminationHit>& out) const;

  std::size_t n_;
  std::vector<std::string> ids_;
  Side ar_, en_;
  std::size_t ngrams_ = 0;
};

std::uint64_t ngram_hash(std::span<const std::string> words);

void sort_hits(std::vector<ContaminationHit>& hits);

std::vector<ContaminationHit> contamination_scan(std::span<const ParallelPair> corpus,
                                                 std::span<const BenchmarkEntry> entries, std::size_t n = 8,
                                                 unsigned workers = 1);

// Streams the corpus file once.
std::vector<ContaminationHit> contamination_scan_file(const std::filesystem::path& corpus, Format format,
                                                      std::span<const BenchmarkEntry> entries, std::size_t n = 8);

}  // namespace tarjim::benchkit
