#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "core/corpus_io.hpp"

namespace tarjim::filters {

struct FilterConfig {
  int min_tokens = 3;
  double arabic_letter_fraction_min = 0.8;
  double latin_letter_fraction_min = 0.8;
  double max_char_ratio = 3.0;
  int ratio_min_chars = 30;
  bool dedup_normalize_case = true;
  std::size_t sample_limit = 20;

  // Throws Error(Config) when a field is out of range.
  void validate() const;
};

enum class Rule { MinTokens, LanguageMismatch, LengthRatio, Duplicate, None };
inline constexpr std::array<Rule, 4> kRejectRules = {Rule::MinTokens, Rule::LanguageMismatch,
                                                     Rule::LengthRatio, Rule::Duplicate};
std::string_view to_string(Rule r);

enum class Verdict { Accept, Reject };

struct FilterDecision {
  Verdict verdict = Verdict::Accept;
  Rule rule = Rule::None;
  std::string detail;

  static FilterDecision accept() { return {}; }
  static FilterDecision reject(Rule r, std::string detail) {
    return {Verdict::Reject, r, std::move(detail)};
  }
  bool accepted() const { return verdict == Verdict::Accept; }
};

struct FilterReport {
  std::uint64_t input_count = 0;
  std::uint64_t accepted_count = 0;
  std::array<std::uint64_t, 4> rejected{};  // indexed like kRejectRules
  std::array<std::vector<std::string>, 4> samples;

  std::uint64_t rejected_total() const;
  bool operator==(const FilterReport&) const = default;
};

std::string normalize_text(std::string_view s);

// Fraction of letter codepoints in `s` that belong to the expected script;
// digits, punctuation, whitespace and marks are excluded from both counts.
// Returns -1 when `s` contains no letters.
double script_fraction(std::string_view s, Origin script);

FilterDecision min_token_filter(const ParallelPair& pair, const FilterConfig& cfg);
FilterDecision script_language_filter(const ParallelPair& pair, const FilterConfig& cfg);
FilterDecision length_ratio_filter(const ParallelPair& pair, const FilterConfig& cfg);

// Stateful exact-match deduplicator; first occurrence wins.
class Deduplicator {
 public:
  explicit Deduplicator(const FilterConfig& cfg) : lowercase_en_(cfg.dedup_normalize_case) {}
  std::string key(const ParallelPair& pair) const;
  FilterDecision check(const ParallelPair& pair);

 private:
  bool lowercase_en_;
  std::unordered_set<std::string> seen_;
};

std::vector<FilterDecision> dedup_stage(std::span<const ParallelPair> pairs, const FilterConfig& cfg);

// min_tokens, language and length-ratio checks in that order; first failure wins.
FilterDecision stateless_checks(const ParallelPair& pair, const FilterConfig& cfg);

struct PipelineResult {
  std::vector<ParallelPair> accepted;
  std::vector<FilterDecision> decisions;  // one per input pair
  FilterReport report;
};

// Runs the four stages. Stateless stages are spread over `workers` threads;
// output is identical for any worker count.
PipelineResult run_pipeline(std::span<const ParallelPair> pairs, const FilterConfig& cfg,
                            unsigned workers = 1);

}  // namespace tarjim::filters
