#include "core/composer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tarjim::composer {

namespace {

constexpr std::uint64_t kOrderSalt = 0x70726574726169ULL;  // "pretrai"
constexpr std::uint64_t kDirectionSalt = 0x646972656374ULL;  // "direct"

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Bidirectional: return "bi";
    case Mode::Ar2EnOnly: return "ar2en";
    case Mode::En2ArOnly: return "en2ar";
  }
  return "bi";
}

std::string_view to_string(Direction d) { return d == Direction::Ar2En ? "ar2en" : "en2ar"; }

Mode parse_mode(std::string_view s) {
  if (s == "bi" || s == "bidirectional") return Mode::Bidirectional;
  if (s == "ar2en" || s == "ar2en_only") return Mode::Ar2EnOnly;
  if (s == "en2ar" || s == "en2ar_only") return Mode::En2ArOnly;
  fail(ErrorCode::Config, "unknown compose mode '" + std::string(s) + "'");
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "ar2en") return Direction::Ar2En;
  if (s == "en2ar") return Direction::En2Ar;
  return std::nullopt;
}

void ComposerConfig::validate() const {
  if (!(ar_source_weight > 0) || !(en_source_weight > 0)) fail(ErrorCode::Config, "direction weights must be positive");
  if (!(short_fraction >= 0.0 && short_fraction <= 1.0)) fail(ErrorCode::Config, "short_fraction must lie in [0, 1]");
  if (short_min_words < 1 || short_max_words < short_min_words) fail(ErrorCode::Config, "invalid short word range");
  if (pretrain_context < 16 || finetune_context < 16) fail(ErrorCode::Config, "context lengths must be >= 16");
}

double record_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(salt)) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Segment lang_tag(Lang lang) {
  return {SegmentRole::LangTag, lang,
          std::string(lang == Lang::Arabic ? kArabicTag : kEnglishTag)};
}

std::string render(std::span<const Segment> segments, const ComposerConfig& cfg) {
  std::string out;
  for (const auto& s : segments) {
    out += s.content;
    if (s.role == SegmentRole::LangTag) out += cfg.tag_separator;
  }
  return out;
}

std::vector<TokenId> tokenize(std::span<const Segment> segments, const Tokenizer& tok,
                              const ComposerConfig& cfg) {
  std::vector<TokenId> ids;
  for (const auto& s : segments) {
    if (s.role == SegmentRole::LangTag) {
      ids.push_back(tok.special_id(s.lang == Lang::Arabic ? SpecialToken::Arabic : SpecialToken::English));
      const auto sep = tok.encode(cfg.tag_separator);
      ids.insert(ids.end(), sep.begin(), sep.end());
    } else {
      const auto part = tok.encode(s.content);
      ids.insert(ids.end(), part.begin(), part.end());
    }
  }
  return ids;
}

// ---- pre-training ----

bool english_first(const ComposerConfig& cfg, std::uint64_t pair_index) {
  return record_uniform(cfg.seed, pair_index, kOrderSalt) < 0.5;
}

std::vector<Segment> format_pretrain_pair(const ParallelPair& pair, bool en_first,
                                          const ComposerConfig& cfg) {
  Segment en_text{SegmentRole::Text, Lang::English, pair.en};
  Segment ar_text{SegmentRole::Text, Lang::Arabic, pair.ar};
  Segment sep{SegmentRole::Separator, Lang::None, cfg.pair_separator};
  if (en_first) return {lang_tag(Lang::English), en_text, sep, lang_tag(Lang::Arabic), ar_text};
  return {lang_tag(Lang::Arabic), ar_text, sep, lang_tag(Lang::English), en_text};
}

PretrainPacker::PretrainPacker(const Tokenizer& tok, const ComposerConfig& cfg) : tok_(tok), cfg_(cfg) {
  cfg_.validate();
}

std::optional<PretrainSequence> PretrainPacker::add(const ParallelPair& pair, std::uint64_t pair_index) {
  ++report_.pairs_in;
  const bool en_first = english_first(cfg_, pair_index);
  const auto segments = format_pretrain_pair(pair, en_first, cfg_);
  auto ids = tokenize(segments, tok_, cfg_);
  ids.push_back(tok_.special_id(SpecialToken::EndOfSequence));

  const auto context = static_cast<std::size_t>(cfg_.pretrain_context);
  if (ids.size() > context) {
    ++report_.dropped_oversize;
    report_.dropped_ids.push_back(pair.id);
    return std::nullopt;
  }
  if (en_first) ++report_.english_first;
  ++report_.pairs_packed;
  report_.tokens += ids.size();

  std::optional<PretrainSequence> closed;
  if (open_.token_ids.size() + ids.size() > context) closed = finish();

  open_.token_ids.insert(open_.token_ids.end(), ids.begin(), ids.end());
  open_.pair_ids.push_back(pair.id);
  open_.text += render(segments, cfg_);
  open_.text += kEndOfSequence;
  return closed;
}

std::optional<PretrainSequence> PretrainPacker::finish() {
  if (open_.token_ids.empty()) return std::nullopt;
  PretrainSequence done = std::move(open_);
  open_ = {};
  done.loss_mask.assign(done.token_ids.size(), 1);
  ++report_.sequences;
  return done;
}

std::vector<PretrainSequence> pack_pretrain(std::span<const ParallelPair> pairs, const Tokenizer& tok,
                                            const ComposerConfig& cfg, PackReport* report) {
  PretrainPacker packer(tok, cfg);
  std::vector<PretrainSequence> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (auto seq = packer.add(pairs[i], i)) out.push_back(std::move(*seq));
  }
  if (auto seq = packer.finish()) out.push_back(std::move(*seq));
  if (report) *report = packer.report();
  return out;
}

// ---- fine-tuning ----

FinetuneSample format_finetune(const ParallelPair& pair, Direction direction) {
  FinetuneSample s;
  s.direction = direction;
  s.pair_id = pair.id;
  const bool ar_src = direction == Direction::Ar2En;
  const Lang src = ar_src ? Lang::Arabic : Lang::English;
  const Lang tgt = ar_src ? Lang::English : Lang::Arabic;
  s.segments = {
      lang_tag(src),
      {SegmentRole::Text, src, ar_src ? pair.ar : pair.en},
      {SegmentRole::Separator, Lang::None, "\n"},
      lang_tag(tgt),
      {SegmentRole::Text, tgt, ar_src ? pair.en : pair.ar},
  };
  return s;
}

std::optional<FinetuneSample> apply_loss_mask(FinetuneSample sample, const Tokenizer& tok,
                                              const ComposerConfig& cfg) {
  if (sample.segments.size() != 5) fail(ErrorCode::InvalidArgument, "fine-tune sample must have 5 segments");
  const auto target = tok.encode(sample.target_text());
  if (target.empty()) fail(ErrorCode::Data, "pair " + sample.pair_id + ": empty target text");

  auto prompt = tokenize(std::span(sample.segments).first(4), tok, cfg);
  const std::size_t total = prompt.size() + target.size() + 1;
  if (total > static_cast<std::size_t>(cfg.finetune_context)) return std::nullopt;

  sample.token_ids = std::move(prompt);
  sample.loss_mask.assign(sample.token_ids.size(), 0);
  sample.token_ids.insert(sample.token_ids.end(), target.begin(), target.end());
  sample.token_ids.push_back(tok.special_id(SpecialToken::EndOfSequence));
  sample.loss_mask.resize(sample.token_ids.size(), 1);
  return sample;
}

std::vector<Direction> sample_directions(std::size_t count, const ComposerConfig& cfg) {
  std::vector<Direction> out(count, Direction::Ar2En);
  if (cfg.mode == Mode::En2ArOnly) std::fill(out.begin(), out.end(), Direction::En2Ar);
  if (cfg.mode != Mode::Bidirectional) return out;
  const double p_ar2en = cfg.ar_source_weight / (cfg.ar_source_weight + cfg.en_source_weight);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = record_uniform(cfg.seed, i, kDirectionSalt) < p_ar2en ? Direction::Ar2En : Direction::En2Ar;
  }
  return out;
}

LengthClass classify_length(std::string_view source_text, const ComposerConfig& cfg) {
  const auto words = text::word_count(source_text);
  if (words < static_cast<std::size_t>(cfg.short_min_words)) return LengthClass::BelowRange;
  if (words <= static_cast<std::size_t>(cfg.short_max_words)) return LengthClass::Short;
  return LengthClass::Long;
}

std::vector<std::size_t> mix_lengths(const std::vector<bool>& is_short, double short_fraction,
                                     MixReport& report) {
  std::vector<std::size_t> shorts, longs;
  for (std::size_t i = 0; i < is_short.size(); ++i) (is_short[i] ? shorts : longs).push_back(i);
  report.available_short = shorts.size();
  report.available_long = longs.size();

  std::size_t wanted;
  if (short_fraction <= 0.0) {
    wanted = 0;
  } else if (short_fraction >= 1.0) {
    wanted = shorts.size();
    longs.clear();
  } else {
    wanted = static_cast<std::size_t>(
        std::llround(short_fraction * static_cast<double>(longs.size()) / (1.0 - short_fraction)));
  }
  std::size_t used = std::min(wanted, shorts.size());
  if (short_fraction > 0.0 && wanted > shorts.size()) report.shortfall = true;
  report.dropped_surplus_short = shorts.size() - used;

  // Spread the shorts evenly: slot k is short iff floor((k+1)s/T) > floor(ks/T).
  const std::size_t total = longs.size() + used;
  std::vector<std::size_t> order;
  order.reserve(total);
  std::size_t si = 0, li = 0;
  for (std::size_t k = 0; k < total; ++k) {
    const bool short_slot = (k + 1) * used / total > k * used / total;
    order.push_back(short_slot ? shorts[si++] : longs[li++]);
  }
  report.short_count = used;
  report.achieved_fraction = total == 0 ? 0.0 : static_cast<double>(used) / static_cast<double>(total);
  return order;
}

FinetuneResult compose_finetune(std::span<const ParallelPair> pairs, const Tokenizer& tok,
                                const ComposerConfig& cfg, unsigned workers) {
  cfg.validate();
  const auto directions = sample_directions(pairs.size(), cfg);

  std::vector<std::optional<FinetuneSample>> masked(pairs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      masked[i] = apply_loss_mask(format_finetune(pairs[i], directions[i]), tok, cfg);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1 || pairs.size() < 2 * workers) {
    work(0, pairs.size());
  } else {
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (std::size_t b = 0; b < pairs.size(); b += chunk) {
      pool.emplace_back(work, b, std::min(pairs.size(), b + chunk));
    }
  }

  FinetuneResult result;
  MixReport& report = result.report;
  std::vector<FinetuneSample> kept;
  std::vector<bool> shortness;
  for (auto& m : masked) {
    if (!m) {
      ++report.dropped_overlength;
      continue;
    }
    const auto cls = classify_length(m->source_text(), cfg);
    if (cls == LengthClass::BelowRange) {
      ++report.dropped_below_range;
      continue;
    }
    shortness.push_back(cls == LengthClass::Short);
    kept.push_back(std::move(*m));
  }

  const auto order = mix_lengths(shortness, cfg.short_fraction, report);

  result.samples.reserve(order.size());
  for (std::size_t idx : order) {
    auto& s = kept[idx];
    (s.direction == Direction::Ar2En ? report.ar2en : report.en2ar) += 1;
    result.samples.push_back(std::move(s));
  }
  report.emitted = result.samples.size();
  return result;
}

}  // namespace tarjim::composer
