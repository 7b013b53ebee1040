#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/corpus_io.hpp"
#include "core/tokenizer.hpp"

namespace tarjim::composer {

enum class Mode { Bidirectional, Ar2EnOnly, En2ArOnly };
enum class Direction { Ar2En, En2Ar };

std::string_view to_string(Mode m);
std::string_view to_string(Direction d);
Mode parse_mode(std::string_view s);  // "bi", "bidirectional", "ar2en", "en2ar"
std::optional<Direction> parse_direction(std::string_view s);

struct ComposerConfig {
  Mode mode = Mode::Bidirectional;
  double ar_source_weight = 2.0;
  double en_source_weight = 1.0;
  double short_fraction = 0.15;
  int short_min_words = 2;
  int short_max_words = 30;
  int pretrain_context = 2048;
  int finetune_context = 512;
  std::uint64_t seed = 7;
  std::string pair_separator = " ";  // between the two halves of a pre-training pair
  std::string tag_separator = " ";   // after a language tag, before its text

  void validate() const;
};

// Deterministic per-record uniform draw in [0, 1) derived from
// (seed, record index, stream salt); independent of processing order.
double record_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t salt);

enum class SegmentRole { LangTag, Text, Separator };
enum class Lang { Arabic, English, None };

struct Segment {
  SegmentRole role;
  Lang lang;
  std::string content;

  bool operator==(const Segment&) const = default;
};

Segment lang_tag(Lang lang);

// Tags render as "<tag><tag_separator>"; text and separators verbatim.
std::string render(std::span<const Segment> segments, const ComposerConfig& cfg);
std::vector<TokenId> tokenize(std::span<const Segment> segments, const Tokenizer& tok,
                              const ComposerConfig& cfg);

// ---- pre-training ----

bool english_first(const ComposerConfig& cfg, std::uint64_t pair_index);

std::vector<Segment> format_pretrain_pair(const ParallelPair& pair, bool english_first,
                                          const ComposerConfig& cfg);

struct PretrainSequence {
  std::vector<TokenId> token_ids;
  std::vector<std::string> pair_ids;
  std::vector<std::uint8_t> loss_mask;  // all ones
  std::string text;
};

struct PackReport {
  std::uint64_t pairs_in = 0;
  std::uint64_t pairs_packed = 0;
  std::uint64_t sequences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t english_first = 0;
  std::uint64_t dropped_oversize = 0;
  std::vector<std::string> dropped_ids;
};

// Greedy serial fold: each pair (formatted, plus one end-of-sequence token)
// is appended to the open sequence if it fits, else it opens a new one.
class PretrainPacker {
 public:
  PretrainPacker(const Tokenizer& tok, const ComposerConfig& cfg);

  // Returns the sequence closed by this pair, if any.
  std::optional<PretrainSequence> add(const ParallelPair& pair, std::uint64_t pair_index);
  std::optional<PretrainSequence> finish();
  const PackReport& report() const { return report_; }

 private:
  const Tokenizer& tok_;
  ComposerConfig cfg_;
  PretrainSequence open_;
  PackReport report_;
};

std::vector<PretrainSequence> pack_pretrain(std::span<const ParallelPair> pairs, const Tokenizer& tok,
                                            const ComposerConfig& cfg, PackReport* report = nullptr);

// ---- fine-tuning ----

struct FinetuneSample {
  Direction direction = Direction::Ar2En;
  std::vector<Segment> segments;
  std::string pair_id;
  std::vector<TokenId> token_ids;
  std::vector<std::uint8_t> loss_mask;

  std::string_view source_text() const { return segments.at(1).content; }
  std::string_view target_text() const { return segments.at(4).content; }
};

FinetuneSample format_finetune(const ParallelPair& pair, Direction direction);

// Fills token_ids and loss_mask. Returns nullopt when the sample plus its
// end-of-sequence token exceeds finetune_context. Throws Error(Data) on an
// empty target.
std::optional<FinetuneSample> apply_loss_mask(FinetuneSample sample, const Tokenizer& tok,
                                              const ComposerConfig& cfg);

std::vector<Direction> sample_directions(std::size_t count, const ComposerConfig& cfg);

struct MixReport {
  std::uint64_t emitted = 0;
  std::uint64_t ar2en = 0;
  std::uint64_t en2ar = 0;
  std::uint64_t short_count = 0;
  double achieved_fraction = 0.0;
  std::uint64_t dropped_overlength = 0;
  std::uint64_t available_short = 0;
  std::uint64_t available_long = 0;
  std::uint64_t dropped_surplus_short = 0;
  std::uint64_t dropped_below_range = 0;
  bool shortfall = false;
};

enum class LengthClass { Short, Long, BelowRange };
LengthClass classify_length(std::string_view source_text, const ComposerConfig& cfg);

// Interleaves short items among long ones so shorts make up short_fraction of
// the output when supply allows. `is_short[i]` classifies item i; returns the
// selected item indices in emission order. Relative order within each class
// is preserved.
std::vector<std::size_t> mix_lengths(const std::vector<bool>& is_short, double short_fraction,
                                     MixReport& report);

struct FinetuneResult {
  std::vector<FinetuneSample> samples;
  MixReport report;
};

// directions -> format -> mask (drops overlength) -> length classes -> mix.
FinetuneResult compose_finetune(std::span<const ParallelPair> pairs, const Tokenizer& tok,
                                const ComposerConfig& cfg, unsigned workers = 1);

}  // namespace tarjim::composer
