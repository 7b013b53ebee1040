#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tarjim::metrics {

enum class Smoothing { None, ExpFloor };

struct MetricConfig {
  int bleu_max_order = 4;
  Smoothing bleu_smoothing = Smoothing::ExpFloor;
  int chrf_char_order = 6;
  int chrf_word_order = 2;
  double chrf_beta = 2.0;
  bool lowercase = false;

  void validate() const;
  // Short signature string identifying every scoring parameter,
  // e.g. "bleu:nrefs:1|case:mixed|tok:13a|smooth:exp|order:4;chrf:c6w2b2|case:mixed".
  std::string fingerprint() const;
};

// WMT "13a" tokenization, codepoint-for-codepoint compatible with the
// reference scorer (including Python whitespace semantics).
std::vector<std::string> tokenize_v13a(std::string_view text);

struct BleuScore {
  double score = 0.0;                // 0-100
  std::vector<double> precisions;    // per order, in [0, 1] (smoothed where applied)
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
  std::vector<std::uint64_t> correct;
  std::vector<std::uint64_t> total;
};

struct ChrfScore {
  double score = 0.0;  // 0-100
  double avg_precision = 0.0;
  double avg_recall = 0.0;
};

// Single reference per segment. Throws Error(InvalidArgument) on an empty
// corpus or mismatched sizes.
BleuScore corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                      const MetricConfig& cfg = {});
ChrfScore corpus_chrf_pp(std::span<const std::string> hyps, std::span<const std::string> refs,
                         const MetricConfig& cfg = {});

}  // namespace tarjim::metrics
