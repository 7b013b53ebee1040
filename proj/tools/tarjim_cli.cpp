// tarjim command-line front end. Everything goes through the C API; this
// file only parses flags, layers configuration and reports outcomes.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "tarjim/tarjim.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUserError = 1, kRuntimeError = 2 };

int level_rank(const std::string& level) {
  if (level == "debug") return 0;
  if (level == "info") return 1;
  if (level == "warn") return 2;
  return 3;
}

class Log {
 public:
  void set_level(const std::string& level) { min_ = level_rank(level); }
  void set_command(std::string cmd) { cmd_ = std::move(cmd); }

  void emit(const std::string& level, const std::string& event, Json fields = Json::object()) const {
    if (level_rank(level) < min_) return;
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
    Json line;
    line["ts"] = ts;
    line["level"] = level;
    if (!cmd_.empty()) line["cmd"] = cmd_;
    line["event"] = event;
    for (auto& [k, v] : fields.items()) line[k] = v;
    std::cerr << line.dump() << '\n';
  }

 private:
  int min_ = 1;
  std::string cmd_;
};

Log g_log;

int exit_for(tarjim_status s) {
  switch (s) {
    case TARJIM_OK: return kOk;
    case TARJIM_E_INVALID_ARGUMENT:
    case TARJIM_E_CONFIG:
    case TARJIM_E_DATA: return kUserError;
    default: return kRuntimeError;
  }
}

int report_failure(tarjim_status s) {
  g_log.emit("error", "failed", {{"status", tarjim_status_string(s)}, {"message", tarjim_last_error()}});
  return exit_for(s);
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flag values only enter the flag layer when given on the command line.
struct FlagLayer {
  Json layer = Json::object();
  std::vector<std::function<void()>> setters;

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& section, const std::string& key,
                   T& storage, const std::string& help) {
    auto* opt = app->add_option(flag, storage, help);
    setters.push_back([this, opt, section, key, &storage] {
      if (opt->count() == 0) return;
      if (section.empty()) {
        layer[key] = storage;
      } else {
        layer[section][key] = storage;
      }
    });
    return opt;
  }

  void collect() {
    for (auto& s : setters) s();
  }
};

struct Paths {
  std::string in, out, report, hyp, ref, src, json, benchmark, profiles, cache, corpus;
};

struct Values {
  // Global.
  std::string log_level, output_dir;
  long long workers = 0;
  // filter
  long long min_tokens = 0, ratio_floor = 0;
  double max_ratio = 0, ar_frac = 0, en_frac = 0;
  // compose
  long long context = 0;
  unsigned long long seed = 0;
  std::string mode, ratio;
  double short_frac = 0;
  // score / report
  std::string comet_endpoint;
  bool lowercase = false;
  // bench
  std::string directions;
  long long concurrency = 0;
  // validate
  long long tolerance = 0, band_min = 0, band_max = 0;
  // contamination
  long long n = 0;
};

// Relative output paths are resolved against output_dir.
std::string out_path(const Json& cfg, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(cfg.at("output_dir").get<std::string>()) / p).lexically_normal().string();
}

void write_config_sidecar(tarjim_session* s, const fs::path& where) {
  std::error_code ec;
  if (where.has_parent_path()) fs::create_directories(where.parent_path(), ec);
  std::ofstream out(where, std::ios::binary | std::ios::trunc);
  if (!out) {
    g_log.emit("warn", "config_not_written", {{"path", where.string()}});
    return;
  }
  out << tarjim_session_config(s) << '\n';
}

int finish(tarjim_session* s, tarjim_status st, const std::vector<fs::path>& sidecars) {
  if (st != TARJIM_OK) return report_failure(st);
  for (const auto& p : sidecars) write_config_sidecar(s, p);
  const char* result = tarjim_session_result(s);
  Json fields = Json::object();
  if (result && *result) fields["result"] = Json::parse(result);
  g_log.emit("info", "done", fields);
  return kOk;
}

fs::path sidecar_for_file(const std::string& p) { return fs::path(p + ".config.json"); }
fs::path sidecar_in_dir(const std::string& d) { return fs::path(d) / "config.json"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tarjim: Arabic-English parallel data preparation and translation evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(tarjim_version()));
  Paths p;
  Values v;
  FlagLayer flags;
  std::string config_path;
  bool strict = false;

  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  flags.add(&app, "--workers", "", "workers", v.workers, "Worker threads (0 = processor count)");
  flags.add(&app, "--log-level", "", "log_level", v.log_level, "debug, info, warn or error")
      ->check(CLI::IsMember({"debug", "info", "warn", "error"}));
  flags.add(&app, "--output-dir", "", "output_dir", v.output_dir, "Base directory for relative output paths");

  auto* filter = app.add_subcommand("filter", "Clean a parallel corpus");
  filter->add_option("--in", p.in, "Input corpus (.jsonl or .tsv)")->required();
  filter->add_option("--out", p.out, "Accepted pairs")->required();
  filter->add_option("--report", p.report, "Filter report JSON");
  flags.add(filter, "--min-tokens", "filter", "min_tokens", v.min_tokens, "Minimum whitespace tokens per side");
  flags.add(filter, "--max-ratio", "filter", "max_ratio", v.max_ratio, "Maximum character length ratio");
  flags.add(filter, "--ratio-floor", "filter", "ratio_floor", v.ratio_floor,
            "Pairs whose longer side is shorter than this skip the ratio check");
  flags.add(filter, "--ar-frac", "filter", "ar_frac", v.ar_frac, "Minimum Arabic letter fraction");
  flags.add(filter, "--en-frac", "filter", "en_frac", v.en_frac, "Minimum Latin letter fraction");

  auto* manifest = app.add_subcommand("manifest", "Corpus statistics");
  manifest->add_option("--in", p.in, "Input corpus")->required();
  manifest->add_option("--out", p.out, "Statistics JSON")->required();

  auto* compose = app.add_subcommand("compose", "Build training data");
  compose->require_subcommand(1);
  auto* pretrain = compose->add_subcommand("pretrain", "Packed bilingual pre-training stream");
  pretrain->add_option("--in", p.in, "Cleaned corpus")->required();
  pretrain->add_option("--out", p.out, "Output JSONL")->required();
  flags.add(pretrain, "--context", "composer", "pretrain_context", v.context, "Sequence length in tokens");
  flags.add(pretrain, "--seed", "composer", "seed", v.seed, "Random seed");
  auto* finetune = compose->add_subcommand("finetune", "Loss-masked translation samples");
  finetune->add_option("--in", p.in, "Cleaned corpus")->required();
  finetune->add_option("--out", p.out, "Output JSONL")->required();
  flags.add(finetune, "--mode", "composer", "mode", v.mode, "bi, ar2en or en2ar")
      ->check(CLI::IsMember({"bi", "bidirectional", "ar2en", "en2ar"}));
  flags.add(finetune, "--ratio", "composer", "ratio", v.ratio, "ar2en:en2ar weight, e.g. 2:1");
  flags.add(finetune, "--short-frac", "composer", "short_frac", v.short_frac, "Target share of short samples");
  flags.add(finetune, "--context", "composer", "finetune_context", v.context, "Sample length limit in tokens");
  flags.add(finetune, "--seed", "composer", "seed", v.seed, "Random seed");

  auto* score = app.add_subcommand("score", "Corpus BLEU, chrF++ and optional COMET");
  score->add_option("--hyp", p.hyp, "Hypotheses, one per line")->required();
  score->add_option("--ref", p.ref, "References, one per line")->required();
  score->add_option("--src", p.src, "Sources, one per line (COMET only)");
  score->add_option("--json", p.json, "Output JSON")->required();
  flags.add(score, "--comet-endpoint", "comet", "endpoint", v.comet_endpoint, "COMET service base URL");
  score->add_flag("--lowercase", v.lowercase, "Case-insensitive scoring");

  auto* bench = app.add_subcommand("bench", "Benchmark translation endpoints");
  bench->require_subcommand(1);
  auto* run = bench->add_subcommand("run", "Translate the benchmark with every profile");
  run->add_option("--benchmark", p.benchmark, "Benchmark JSONL")->required();
  run->add_option("--profiles", p.profiles, "Model profiles and templates JSON")->required();
  run->add_option("--cache", p.cache, "Cache directory")->required();
  flags.add(run, "--directions", "bench", "directions", v.directions, "Comma-separated: ar2en,en2ar");
  flags.add(run, "--concurrency", "bench", "concurrency", v.concurrency, "Requests in flight");
  auto* report = bench->add_subcommand("report", "Score cached translations");
  report->add_option("--cache", p.cache, "Cache directory")->required();
  report->add_option("--benchmark", p.benchmark, "Benchmark JSONL")->required();
  report->add_option("--out", p.out, "Report directory")->required();
  flags.add(report, "--comet-endpoint", "comet", "endpoint", v.comet_endpoint, "COMET service base URL");

  auto* validate = app.add_subcommand("validate", "Check a benchmark's construction constraints");
  validate->add_option("--benchmark", p.benchmark, "Benchmark JSONL")->required();
  validate->add_option("--report", p.report, "Validation report JSON")->required();
  flags.add(validate, "--tolerance", "validate", "balance_tolerance", v.tolerance,
            "Allowed origin count difference");
  flags.add(validate, "--band-min", "validate", "band_min_words", v.band_min, "Length band lower bound (words)");
  flags.add(validate, "--band-max", "validate", "band_max_words", v.band_max, "Length band upper bound (words)");
  validate->add_flag("--strict", strict, "Exit 1 when any flag is raised");

  auto* contam = app.add_subcommand("contamination", "Find benchmark n-grams in a training corpus");
  contam->add_option("--benchmark", p.benchmark, "Benchmark JSONL")->required();
  contam->add_option("--corpus", p.corpus, "Training corpus")->required();
  contam->add_option("--out", p.out, "Hits JSONL")->required();
  flags.add(contam, "--n", "contamination", "n", v.n, "n-gram order in words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUserError;
  }

  flags.collect();
  if (score->parsed() && v.lowercase) flags.layer["metrics"]["lowercase"] = true;

  std::string cmd;
  for (auto* sub = app.get_subcommands().front(); sub;) {
    cmd += (cmd.empty() ? "" : " ") + sub->get_name();
    const auto next = sub->get_subcommands();
    sub = next.empty() ? nullptr : next.front();
  }
  g_log.set_command(cmd);

  tarjim_session* raw = nullptr;
  if (tarjim_status st = tarjim_session_create(&raw); st != TARJIM_OK) return report_failure(st);
  std::unique_ptr<tarjim_session, decltype(&tarjim_session_destroy)> session(raw, tarjim_session_destroy);
  tarjim_session* s = session.get();

  if (!config_path.empty()) {
    const auto text = slurp(config_path);
    if (!text) {
      g_log.emit("error", "failed", {{"message", "cannot read " + config_path}});
      return kUserError;
    }
    if (auto st = tarjim_session_apply_json(s, text->c_str(), config_path.c_str()); st != TARJIM_OK) {
      return report_failure(st);
    }
  }
  if (auto st = tarjim_session_apply_env(s); st != TARJIM_OK) return report_failure(st);
  if (auto st = tarjim_session_apply_json(s, flags.layer.dump().c_str(), "command line"); st != TARJIM_OK) {
    return report_failure(st);
  }
  const Json cfg = Json::parse(tarjim_session_config(s));
  g_log.set_level(cfg.at("log_level").get<std::string>());
  g_log.emit("debug", "config", {{"config", cfg}});

  if (filter->parsed()) {
    const auto out = out_path(cfg, p.out);
    const auto rep = out_path(cfg, p.report);
    return finish(s, tarjim_filter(s, p.in.c_str(), out.c_str(), rep.empty() ? nullptr : rep.c_str()),
                  {sidecar_for_file(out)});
  }
  if (manifest->parsed()) {
    const auto out = out_path(cfg, p.out);
    return finish(s, tarjim_manifest(s, p.in.c_str(), out.c_str()), {sidecar_for_file(out)});
  }
  if (pretrain->parsed()) {
    const auto out = out_path(cfg, p.out);
    return finish(s, tarjim_compose_pretrain(s, p.in.c_str(), out.c_str()), {sidecar_for_file(out)});
  }
  if (finetune->parsed()) {
    const auto out = out_path(cfg, p.out);
    return finish(s, tarjim_compose_finetune(s, p.in.c_str(), out.c_str()), {sidecar_for_file(out)});
  }
  if (score->parsed()) {
    const auto out = out_path(cfg, p.json);
    return finish(s,
                  tarjim_score_files(s, p.hyp.c_str(), p.ref.c_str(), p.src.empty() ? nullptr : p.src.c_str(),
                                     out.c_str()),
                  {sidecar_for_file(out)});
  }
  if (run->parsed()) {
    const auto cache = out_path(cfg, p.cache);
    const auto st = tarjim_bench_run(s, p.benchmark.c_str(), p.profiles.c_str(), cache.c_str());
    const int code = finish(s, st, {sidecar_in_dir(cache)});
    if (code != kOk) return code;
    const Json result = Json::parse(tarjim_session_result(s));
    if (result.at("failures").get<long long>() > 0) {
      // Completed records are cached; a re-run retries only the failures.
      g_log.emit("error", "incomplete", {{"failures", result.at("failures")}});
      return kRuntimeError;
    }
    return kOk;
  }
  if (report->parsed()) {
    const auto out = out_path(cfg, p.out);
    return finish(s, tarjim_bench_report(s, p.cache.c_str(), p.benchmark.c_str(), out.c_str()),
                  {sidecar_in_dir(out)});
  }
  if (validate->parsed()) {
    const auto rep = out_path(cfg, p.report);
    const int code = finish(s, tarjim_validate(s, p.benchmark.c_str(), rep.c_str()), {sidecar_for_file(rep)});
    if (code != kOk) return code;
    const Json result = Json::parse(tarjim_session_result(s));
    const auto flags_raised = result.at("flag_count").get<long long>();
    if (flags_raised > 0) g_log.emit("warn", "flags_raised", {{"flag_count", flags_raised}});
    return strict && flags_raised > 0 ? kUserError : kOk;
  }
  if (contam->parsed()) {
    const auto out = out_path(cfg, p.out);
    return finish(s, tarjim_contamination(s, p.benchmark.c_str(), p.corpus.c_str(), out.c_str()),
                  {sidecar_for_file(out)});
  }
  std::cerr << app.help();
  return kUserError;
}
