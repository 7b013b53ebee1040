#include "tarjim/tarjim.h"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "core/benchkit.hpp"
#include "core/benchrunner.hpp"
#include "core/comet_client.hpp"
#include "core/composer.hpp"
#include "core/config.hpp"
#include "core/corpus_io.hpp"
#include "core/error.hpp"
#include "core/filters.hpp"
#include "core/metrics.hpp"
#include "core/report.hpp"
#include "core/tokenizer.hpp"

using tarjim::ErrorCode;
using tarjim::fail;
using Json = tarjim::config::Json;
namespace fs = std::filesystem;

struct tarjim_session {
  Json config = tarjim::config::defaults();
  std::string config_text;
  std::string result;
};

namespace {

thread_local std::string g_last_error;

tarjim_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return TARJIM_E_INVALID_ARGUMENT;
    case ErrorCode::Config: return TARJIM_E_CONFIG;
    case ErrorCode::Data: return TARJIM_E_DATA;
    case ErrorCode::Io: return TARJIM_E_IO;
    case ErrorCode::Network: return TARJIM_E_NETWORK;
    case ErrorCode::Protocol: return TARJIM_E_PROTOCOL;
    case ErrorCode::Internal: return TARJIM_E_INTERNAL;
  }
  return TARJIM_E_INTERNAL;
}

template <class F>
tarjim_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TARJIM_OK;
  } catch (const tarjim::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  }
  return TARJIM_E_INTERNAL;
}

void require(const void* p, const char* name) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

tarjim::Format format_for(const fs::path& p) {
  return p.extension() == ".tsv" ? tarjim::Format::Tsv : tarjim::Format::Jsonl;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) fail(ErrorCode::Io, "cannot create " + p.parent_path().string() + ": " + ec.message());
  }
}

std::ofstream open_out(const fs::path& p) {
  ensure_parent(p);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write " + p.string());
  return out;
}

void write_text(const fs::path& p, const std::string& s) {
  auto out = open_out(p);
  out << s;
  if (!out) fail(ErrorCode::Io, "write failed: " + p.string());
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + p.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

Json bleu_json(const tarjim::metrics::BleuScore& b) {
  Json j;
  j["score"] = b.score;
  j["precisions"] = b.precisions;
  j["brevity_penalty"] = b.brevity_penalty;
  j["hyp_len"] = b.hyp_len;
  j["ref_len"] = b.ref_len;
  j["correct"] = b.correct;
  j["total"] = b.total;
  return j;
}

Json chrf_json(const tarjim::metrics::ChrfScore& c) {
  return {{"score", c.score}, {"avg_precision", c.avg_precision}, {"avg_recall", c.avg_recall}};
}

Json filter_report_json(const tarjim::filters::FilterReport& r) {
  Json j;
  j["input_count"] = r.input_count;
  j["accepted_count"] = r.accepted_count;
  j["rejected_total"] = r.rejected_total();
  Json rejected, samples;
  for (std::size_t i = 0; i < tarjim::filters::kRejectRules.size(); ++i) {
    const std::string name(tarjim::filters::to_string(tarjim::filters::kRejectRules[i]));
    rejected[name] = r.rejected[i];
    samples[name] = r.samples[i];
  }
  j["rejected"] = rejected;
  j["samples"] = samples;
  return j;
}

Json manifest_json(const tarjim::ManifestStats& m) {
  Json j;
  j["pair_count"] = m.pair_count;
  j["ar_tokens"] = m.ar_tokens;
  j["en_tokens"] = m.en_tokens;
  Json ar, en;
  for (std::size_t i = 0; i < tarjim::kLengthBuckets.size(); ++i) {
    ar[std::string(tarjim::kLengthBuckets[i])] = m.ar_histogram[i];
    en[std::string(tarjim::kLengthBuckets[i])] = m.en_histogram[i];
  }
  j["ar_length_histogram"] = ar;
  j["en_length_histogram"] = en;
  j["origin"] = {{"ar", m.origin_ar}, {"en", m.origin_en}};
  j["domains"] = m.domains;
  return j;
}

Json validation_json(const tarjim::benchkit::ValidationReport& r, const tarjim::benchkit::ValidationConfig& cfg) {
  Json j;
  j["pair_count"] = r.pair_count;
  j["origin_balance"] = {{"ar", r.origin_ar},
                         {"en", r.origin_en},
                         {"delta", r.balance_delta},
                         {"tolerance", cfg.balance_tolerance},
                         {"flag", r.balance_flag}};
  Json violators = Json::array();
  for (const auto& v : r.band_violators) {
    violators.push_back({{"id", v.id}, {"side", tarjim::to_string(v.side)}, {"words", v.words}});
  }
  j["length_band"] = {{"min_words", cfg.band_min_words},
                      {"max_words", cfg.band_max_words},
                      {"origin_in_band", r.band_compliant},
                      {"violations", r.band_violations},
                      {"violators", violators},
                      {"violators_truncated", r.band_violations > r.band_violators.size()},
                      {"translation_in_band", r.translation_in_band}};
  j["duplicate_ids"] = r.duplicate_ids;
  j["duplicate_texts"] = r.duplicate_texts;
  j["domains"] = r.domains;
  j["uncatalogued_domains"] = r.uncatalogued_domains;
  j["flag_count"] = r.flag_count();
  return j;
}

std::string hit_line(const tarjim::benchkit::ContaminationHit& h) {
  std::string ngram;
  for (const auto& w : h.ngram) {
    if (!ngram.empty()) ngram += ' ';
    ngram += w;
  }
  Json j;
  j["benchmark_id"] = h.benchmark_id;
  j["corpus_id"] = h.corpus_id;
  j["side"] = tarjim::to_string(h.side);
  j["ngram"] = ngram;
  j["benchmark_pos"] = h.benchmark_pos;
  j["corpus_pos"] = h.corpus_pos;
  j["shared_ngrams"] = h.shared_ngrams;
  return j.dump() + "\n";
}

tarjim::metrics::MetricConfig metric_options(const tarjim_metric_options* o) {
  tarjim::metrics::MetricConfig m;
  if (!o) return m;
  if (o->bleu_max_order < 1 || o->bleu_max_order > TARJIM_MAX_BLEU_ORDER) {
    fail(ErrorCode::Config, "bleu_max_order must be in [1, 8]");
  }
  m.bleu_max_order = o->bleu_max_order;
  m.bleu_smoothing = o->bleu_smoothing ? tarjim::metrics::Smoothing::ExpFloor : tarjim::metrics::Smoothing::None;
  m.chrf_char_order = o->chrf_char_order;
  m.chrf_word_order = o->chrf_word_order;
  m.chrf_beta = o->chrf_beta;
  m.lowercase = o->lowercase != 0;
  return m;
}

void collect(const char* const* hyps, const char* const* refs, size_t count, std::vector<std::string>& h,
             std::vector<std::string>& r) {
  if (count > 0) {
    require(hyps, "hyps");
    require(refs, "refs");
  }
  for (size_t i = 0; i < count; ++i) {
    if (!hyps[i] || !refs[i]) fail(ErrorCode::InvalidArgument, "NULL segment at index " + std::to_string(i));
    h.emplace_back(hyps[i]);
    r.emplace_back(refs[i]);
  }
}

}  // namespace

extern "C" {

const char* tarjim_status_string(tarjim_status s) {
  switch (s) {
    case TARJIM_OK: return "ok";
    case TARJIM_E_INVALID_ARGUMENT: return "invalid argument";
    case TARJIM_E_CONFIG: return "configuration error";
    case TARJIM_E_DATA: return "data error";
    case TARJIM_E_IO: return "i/o error";
    case TARJIM_E_NETWORK: return "network error";
    case TARJIM_E_PROTOCOL: return "protocol error";
    case TARJIM_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tarjim_last_error(void) { return g_last_error.c_str(); }

const char* tarjim_version(void) { return "0.1.0"; }

tarjim_status tarjim_default_config(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    const auto s = tarjim::config::defaults().dump(2);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out_json = buf;
  });
}

void tarjim_free(void* p) { std::free(p); }

tarjim_status tarjim_session_create(tarjim_session** out) {
  return guarded([&] {
    require(out, "out");
    auto* s = new tarjim_session;
    s->config_text = s->config.dump(2);
    *out = s;
  });
}

void tarjim_session_destroy(tarjim_session* session) { delete session; }

tarjim_status tarjim_session_apply_json(tarjim_session* s, const char* json, const char* origin) {
  return guarded([&] {
    require(s, "session");
    require(json, "json");
    const std::string where = origin ? origin : "config";
    Json next = s->config;
    tarjim::config::merge(next, tarjim::config::parse_layer(json, where), where);
    s->config = std::move(next);
    s->config_text = s->config.dump(2);
  });
}

tarjim_status tarjim_session_apply_env(tarjim_session* s) {
  return guarded([&] {
    require(s, "session");
    Json next = s->config;
    tarjim::config::merge(next, tarjim::config::env_layer(tarjim::config::defaults()), "environment");
    s->config = std::move(next);
    s->config_text = s->config.dump(2);
  });
}

const char* tarjim_session_config(const tarjim_session* s) { return s ? s->config_text.c_str() : ""; }

const char* tarjim_session_result(const tarjim_session* s) { return s ? s->result.c_str() : ""; }

tarjim_status tarjim_filter(tarjim_session* s, const char* in_path, const char* out_path, const char* report_path) {
  return guarded([&] {
    require(s, "session");
    require(in_path, "in_path");
    require(out_path, "out_path");
    const auto cfg = tarjim::config::filter_config(s->config);
    const auto pairs = tarjim::read_pairs(in_path, format_for(in_path));
    const auto result = tarjim::filters::run_pipeline(pairs, cfg, tarjim::config::workers(s->config));
    ensure_parent(out_path);
    tarjim::write_pairs(result.accepted, out_path, format_for(out_path));
    const Json report = filter_report_json(result.report);
    if (report_path) write_text(report_path, report.dump(2) + "\n");
    Json summary = report;
    summary.erase("samples");
    s->result = summary.dump();
  });
}

tarjim_status tarjim_manifest(tarjim_session* s, const char* in_path, const char* out_path) {
  return guarded([&] {
    require(s, "session");
    require(in_path, "in_path");
    require(out_path, "out_path");
    tarjim::ManifestStats stats;
    tarjim::PairReader reader(in_path, format_for(in_path));
    while (auto item = reader.next()) {
      if (auto* err = std::get_if<tarjim::ReadError>(&*item)) {
        fail(ErrorCode::Data, std::string(in_path) + ": " + err->message());
      }
      stats.add(std::get<tarjim::BenchmarkEntry>(*item).pair);
    }
    const Json j = manifest_json(stats);
    write_text(out_path, j.dump(2) + "\n");
    s->result = Json{{"pair_count", stats.pair_count}}.dump();
  });
}

tarjim_status tarjim_compose_pretrain(tarjim_session* s, const char* in_path, const char* out_path) {
  return guarded([&] {
    require(s, "session");
    require(in_path, "in_path");
    require(out_path, "out_path");
    const auto cfg = tarjim::config::composer_config(s->config);
    const tarjim::ByteTokenizer tok;
    auto out = open_out(out_path);
    tarjim::composer::PretrainPacker packer(tok, cfg);
    auto emit = [&](const tarjim::composer::PretrainSequence& seq) {
      Json j;
      j["pair_ids"] = seq.pair_ids;
      j["text"] = seq.text;
      j["token_ids"] = seq.token_ids;
      j["loss_mask"] = seq.loss_mask;
      out << j.dump() << '\n';
    };
    tarjim::PairReader reader(in_path, format_for(in_path));
    std::uint64_t index = 0;
    while (auto item = reader.next()) {
      if (auto* err = std::get_if<tarjim::ReadError>(&*item)) {
        fail(ErrorCode::Data, std::string(in_path) + ": " + err->message());
      }
      if (auto seq = packer.add(std::get<tarjim::BenchmarkEntry>(*item).pair, index++)) emit(*seq);
    }
    if (auto seq = packer.finish()) emit(*seq);
    if (!out) fail(ErrorCode::Io, std::string("write failed: ") + out_path);
    const auto& r = packer.report();
    s->result = Json{{"pairs_in", r.pairs_in},
                     {"pairs_packed", r.pairs_packed},
                     {"sequences", r.sequences},
                     {"tokens", r.tokens},
                     {"english_first", r.english_first},
                     {"dropped_oversize", r.dropped_oversize},
                     {"dropped_ids", r.dropped_ids}}
                    .dump();
  });
}

tarjim_status tarjim_compose_finetune(tarjim_session* s, const char* in_path, const char* out_path) {
  return guarded([&] {
    require(s, "session");
    require(in_path, "in_path");
    require(out_path, "out_path");
    const auto cfg = tarjim::config::composer_config(s->config);
    const tarjim::ByteTokenizer tok;
    const auto pairs = tarjim::read_pairs(in_path, format_for(in_path));
    const auto result = tarjim::composer::compose_finetune(pairs, tok, cfg, tarjim::config::workers(s->config));
    auto out = open_out(out_path);
    for (const auto& sample : result.samples) {
      Json j;
      j["pair_ids"] = Json::array({sample.pair_id});
      j["direction"] = tarjim::composer::to_string(sample.direction);
      j["text"] = tarjim::composer::render(sample.segments, cfg);
      j["token_ids"] = sample.token_ids;
      j["loss_mask"] = sample.loss_mask;
      out << j.dump() << '\n';
    }
    if (!out) fail(ErrorCode::Io, std::string("write failed: ") + out_path);
    const auto& r = result.report;
    s->result = Json{{"emitted", r.emitted},
                     {"ar2en", r.ar2en},
                     {"en2ar", r.en2ar},
                     {"short", r.short_count},
                     {"achieved_short_fraction", r.achieved_fraction},
                     {"dropped_overlength", r.dropped_overlength},
                     {"dropped_surplus_short", r.dropped_surplus_short},
                     {"dropped_below_range", r.dropped_below_range},
                     {"shortfall", r.shortfall}}
                    .dump();
  });
}

tarjim_status tarjim_score_files(tarjim_session* s, const char* hyp_path, const char* ref_path, const char* src_path,
                                 const char* out_json_path) {
  return guarded([&] {
    require(s, "session");
    require(hyp_path, "hyp_path");
    require(ref_path, "ref_path");
    require(out_json_path, "out_json_path");
    const auto mcfg = tarjim::config::metric_config(s->config);
    const auto comet = tarjim::config::comet_config(s->config);
    const auto hyps = read_lines(hyp_path);
    const auto refs = read_lines(ref_path);
    if (hyps.size() != refs.size()) {
      fail(ErrorCode::InvalidArgument, "line count mismatch: " + std::to_string(hyps.size()) + " hypotheses vs " +
                                           std::to_string(refs.size()) + " references");
    }
    Json j;
    j["metric_config"] = mcfg.fingerprint();
    j["segments"] = hyps.size();
    j["bleu"] = bleu_json(tarjim::metrics::corpus_bleu(hyps, refs, mcfg));
    j["chrf_pp"] = chrf_json(tarjim::metrics::corpus_chrf_pp(hyps, refs, mcfg));
    if (comet) {
      if (!src_path) fail(ErrorCode::InvalidArgument, "COMET scoring needs source lines");
      const auto srcs = read_lines(src_path);
      if (srcs.size() != hyps.size()) {
        fail(ErrorCode::InvalidArgument, "line count mismatch: " + std::to_string(srcs.size()) + " sources vs " +
                                             std::to_string(hyps.size()) + " hypotheses");
      }
      std::vector<tarjim::metrics::CometTriple> triples;
      for (std::size_t i = 0; i < hyps.size(); ++i) triples.push_back({srcs[i], hyps[i], refs[i]});
      const auto r = tarjim::metrics::CometClient(*comet).score(triples);
      j["comet"] = {{"system", r.system},
                    {"segments", r.segments},
                    {"raw_segments", r.raw_segments},
                    {"model_id", r.model_id}};
    }
    write_text(out_json_path, j.dump(2) + "\n");
    Json summary = {{"bleu", j["bleu"]["score"]}, {"chrf_pp", j["chrf_pp"]["score"]}};
    if (comet) summary["comet"] = j["comet"]["system"];
    s->result = summary.dump();
  });
}

tarjim_status tarjim_bench_run(tarjim_session* s, const char* benchmark_path, const char* profiles_path,
                               const char* cache_dir) {
  return guarded([&] {
    require(s, "session");
    require(benchmark_path, "benchmark_path");
    require(profiles_path, "profiles_path");
    require(cache_dir, "cache_dir");
    const auto profiles = tarjim::bench::load_profiles(profiles_path);
    const auto directions =
        tarjim::bench::parse_directions(s->config.at("bench").at("directions").get<std::string>());
    const auto entries = tarjim::read_benchmark(benchmark_path, format_for(benchmark_path));
    const auto summary = tarjim::bench::run_benchmark(profiles, entries, directions, cache_dir,
                                                      tarjim::config::bench_concurrency(s->config));
    Json failures = Json::array();
    for (const auto& r : summary.records) {
      if (r.error && failures.size() < 20) {
        failures.push_back({{"model", r.model},
                            {"direction", tarjim::composer::to_string(r.direction)},
                            {"pair_id", r.pair_id},
                            {"error", *r.error}});
      }
    }
    s->result = Json{{"records", summary.records.size()},
                     {"requests", summary.requests},
                     {"cache_hits", summary.cache_hits},
                     {"failures", summary.failures},
                     {"failure_samples", failures}}
                    .dump();
  });
}

tarjim_status tarjim_bench_report(tarjim_session* s, const char* cache_dir, const char* benchmark_path,
                                  const char* out_dir) {
  return guarded([&] {
    require(s, "session");
    require(cache_dir, "cache_dir");
    require(benchmark_path, "benchmark_path");
    require(out_dir, "out_dir");
    const auto mcfg = tarjim::config::metric_config(s->config);
    const auto comet = tarjim::config::comet_config(s->config);
    const auto manifest = tarjim::bench::read_manifest(cache_dir);
    const auto entries = tarjim::read_benchmark(benchmark_path, format_for(benchmark_path));
    if (manifest.benchmark_pairs != entries.size()) {
      fail(ErrorCode::Data, "cache was built for " + std::to_string(manifest.benchmark_pairs) +
                                " benchmark pairs, benchmark has " + std::to_string(entries.size()));
    }
    const tarjim::bench::RunCache cache(cache_dir);
    const auto report = tarjim::bench::score_and_report(manifest, cache, entries, mcfg, comet);
    tarjim::bench::write_report(report, out_dir);
    std::size_t holes = 0;
    for (const auto& m : report.models) holes += m.missing_total();
    s->result = Json{{"models", report.models.size()}, {"directions", report.directions.size()}, {"holes", holes}}
                    .dump();
  });
}

tarjim_status tarjim_validate(tarjim_session* s, const char* benchmark_path, const char* report_path) {
  return guarded([&] {
    require(s, "session");
    require(benchmark_path, "benchmark_path");
    require(report_path, "report_path");
    const auto vcfg = tarjim::config::validation_config(s->config);
    std::vector<tarjim::BenchmarkEntry> entries;
    std::vector<std::string> repeated_ids;
    tarjim::PairReader reader(benchmark_path, format_for(benchmark_path));
    while (auto item = reader.next()) {
      if (auto* err = std::get_if<tarjim::ReadError>(&*item)) {
        if (err->reason == "duplicate_id") continue;  // reported by the validator
        fail(ErrorCode::Data, std::string(benchmark_path) + ": " + err->message());
      }
      entries.push_back(std::move(std::get<tarjim::BenchmarkEntry>(*item)));
    }
    const auto report = tarjim::benchkit::validate_benchmark(entries, vcfg);
    const Json j = validation_json(report, vcfg);
    write_text(report_path, j.dump(2) + "\n");
    s->result = Json{{"pair_count", report.pair_count},
                     {"flag_count", report.flag_count()},
                     {"balance_flag", report.balance_flag},
                     {"band_violations", report.band_violations},
                     {"duplicate_ids", report.duplicate_ids.size()},
                     {"duplicate_texts", report.duplicate_texts.size()}}
                    .dump();
  });
}

tarjim_status tarjim_contamination(tarjim_session* s, const char* benchmark_path, const char* corpus_path,
                                   const char* out_path) {
  return guarded([&] {
    require(s, "session");
    require(benchmark_path, "benchmark_path");
    require(corpus_path, "corpus_path");
    require(out_path, "out_path");
    const auto n = tarjim::config::contamination_n(s->config);
    const auto workers = tarjim::config::workers(s->config);
    const auto entries = tarjim::read_benchmark(benchmark_path, format_for(benchmark_path));
    const tarjim::benchkit::ContaminationIndex index(entries, n);

    // The corpus is streamed in blocks; each block is scanned in parallel.
    constexpr std::size_t kBlock = 1 << 16;
    std::vector<tarjim::benchkit::ContaminationHit> hits;
    std::vector<tarjim::ParallelPair> block;
    std::uint64_t corpus_pairs = 0;
    auto flush = [&] {
      std::vector<std::vector<tarjim::benchkit::ContaminationHit>> shards(workers);
      const std::size_t chunk = (block.size() + workers - 1) / workers;
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
          const std::size_t begin = std::min(block.size(), w * chunk);
          const std::size_t end = std::min(block.size(), begin + chunk);
          pool.emplace_back([&, w, begin, end] {
            for (std::size_t i = begin; i < end; ++i) index.scan(block[i], shards[w]);
          });
        }
      }
      for (auto& sh : shards) std::move(sh.begin(), sh.end(), std::back_inserter(hits));
      block.clear();
    };
    tarjim::PairReader reader(corpus_path, format_for(corpus_path));
    while (auto item = reader.next()) {
      if (auto* err = std::get_if<tarjim::ReadError>(&*item)) {
        if (err->reason == "duplicate_id") continue;
        fail(ErrorCode::Data, std::string(corpus_path) + ": " + err->message());
      }
      block.push_back(std::move(std::get<tarjim::BenchmarkEntry>(*item).pair));
      ++corpus_pairs;
      if (block.size() == kBlock) flush();
    }
    if (!block.empty()) flush();
    tarjim::benchkit::sort_hits(hits);

    auto out = open_out(out_path);
    std::set<std::string> touched;
    for (const auto& h : hits) {
      out << hit_line(h);
      touched.insert(h.benchmark_id);
    }
    if (!out) fail(ErrorCode::Io, std::string("write failed: ") + out_path);
    s->result = Json{{"benchmark_entries", entries.size()},
                     {"benchmark_ngrams", index.ngram_count()},
                     {"corpus_pairs", corpus_pairs},
                     {"hits", hits.size()},
                     {"contaminated_entries", touched.size()}}
                    .dump();
  });
}

void tarjim_metric_options_default(tarjim_metric_options* o) {
  if (!o) return;
  const tarjim::metrics::MetricConfig m;
  o->bleu_max_order = m.bleu_max_order;
  o->bleu_smoothing = m.bleu_smoothing == tarjim::metrics::Smoothing::ExpFloor ? 1 : 0;
  o->chrf_char_order = m.chrf_char_order;
  o->chrf_word_order = m.chrf_word_order;
  o->chrf_beta = m.chrf_beta;
  o->lowercase = m.lowercase ? 1 : 0;
}

tarjim_status tarjim_corpus_bleu(const char* const* hyps, const char* const* refs, size_t count,
                                 const tarjim_metric_options* options, tarjim_bleu_result* out) {
  return guarded([&] {
    require(out, "out");
    std::vector<std::string> h, r;
    collect(hyps, refs, count, h, r);
    const auto b = tarjim::metrics::corpus_bleu(h, r, metric_options(options));
    *out = {};
    out->score = b.score;
    out->brevity_penalty = b.brevity_penalty;
    for (std::size_t i = 0; i < b.precisions.size() && i < TARJIM_MAX_BLEU_ORDER; ++i) {
      out->precisions[i] = b.precisions[i];
    }
    out->hyp_len = b.hyp_len;
    out->ref_len = b.ref_len;
  });
}

tarjim_status tarjim_corpus_chrf_pp(const char* const* hyps, const char* const* refs, size_t count,
                                    const tarjim_metric_options* options, tarjim_chrf_result* out) {
  return guarded([&] {
    require(out, "out");
    std::vector<std::string> h, r;
    collect(hyps, refs, count, h, r);
    const auto c = tarjim::metrics::corpus_chrf_pp(h, r, metric_options(options));
    out->score = c.score;
    out->avg_precision = c.avg_precision;
    out->avg_recall = c.avg_recall;
  });
}

}  // extern "C"
