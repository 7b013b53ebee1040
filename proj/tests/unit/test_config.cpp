#include <doctest.h>

#include <map>

#include "core/config.hpp"
#include "core/error.hpp"

using namespace tarjim;
using namespace tarjim::config;

namespace {

auto fake_env(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("defaults produce the documented component settings") {
  const auto cfg = defaults();
  const auto f = filter_config(cfg);
  CHECK(f.min_tokens == 3);
  CHECK(f.max_char_ratio == 3.0);
  const auto c = composer_config(cfg);
  CHECK(c.mode == composer::Mode::Bidirectional);
  CHECK(c.ar_source_weight == 2.0);
  CHECK(c.en_source_weight == 1.0);
  CHECK(c.short_fraction == 0.15);
  CHECK(c.pretrain_context == 2048);
  CHECK(c.finetune_context == 512);
  const auto m = metric_config(cfg);
  CHECK(m.bleu_max_order == 4);
  CHECK(m.chrf_char_order == 6);
  CHECK(m.chrf_word_order == 2);
  CHECK(m.chrf_beta == 2.0);
  CHECK_FALSE(comet_config(cfg).has_value());
  CHECK(validation_config(cfg).band_min_words == 50);
  CHECK(validation_config(cfg).band_max_words == 100);
  CHECK(contamination_n(cfg) == 8);
  CHECK(workers(cfg) >= 1);
}

TEST_CASE("layers apply in order: file, then environment, then flags") {
  auto cfg = defaults();
  merge(cfg, parse_layer(R"({"composer":{"seed":11,"short_frac":0.2},"workers":3})", "file"), "file");
  merge(cfg, env_layer(cfg, fake_env({{"TARJIM_COMPOSER_SEED", "12"}, {"TARJIM_LOG_LEVEL", "debug"}})), "env");
  merge(cfg, Json{{"composer", {{"seed", 13}}}}, "flags");
  CHECK(cfg["composer"]["seed"] == 13);
  CHECK(cfg["composer"]["short_frac"] == 0.2);
  CHECK(cfg["workers"] == 3);
  CHECK(cfg["log_level"] == "debug");
  CHECK(workers(cfg) == 3);
}

TEST_CASE("environment values are typed by their defaults") {
  const auto schema = defaults();
  const auto layer = env_layer(schema, fake_env({{"TARJIM_METRICS_LOWERCASE", "yes"},
                                                 {"TARJIM_FILTER_MAX_RATIO", "2.5"},
                                                 {"TARJIM_CONTAMINATION_N", "10"}}));
  CHECK(layer["metrics"]["lowercase"] == true);
  CHECK(layer["filter"]["max_ratio"] == 2.5);
  CHECK(layer["contamination"]["n"] == 10);
  CHECK(code_of([&] { env_layer(schema, fake_env({{"TARJIM_WORKERS", "many"}})); }) == ErrorCode::Config);
  CHECK(code_of([&] { env_layer(schema, fake_env({{"TARJIM_METRICS_LOWERCASE", "maybe"}})); }) == ErrorCode::Config);
}

TEST_CASE("unknown keys and wrong types are rejected") {
  auto cfg = defaults();
  CHECK(code_of([&] { merge(cfg, parse_layer(R"({"composr":{}})", "f"), "f"); }) == ErrorCode::Config);
  CHECK(code_of([&] { merge(cfg, parse_layer(R"({"composer":{"sed":1}})", "f"), "f"); }) == ErrorCode::Config);
  CHECK(code_of([&] { merge(cfg, parse_layer(R"({"composer":{"seed":"x"}})", "f"), "f"); }) == ErrorCode::Config);
  CHECK(code_of([&] { parse_layer("{oops", "f"); }) == ErrorCode::Config);
  CHECK(code_of([&] { merge(cfg, parse_layer("[1]", "f"), "f"); }) == ErrorCode::Config);
  // Integers are fine where a float is expected, and stay floats.
  merge(cfg, parse_layer(R"({"filter":{"max_ratio":4}})", "f"), "f");
  CHECK(cfg["filter"]["max_ratio"].is_number_float());
  CHECK(filter_config(cfg).max_char_ratio == 4.0);
}

TEST_CASE("ratios and COMET settings") {
  CHECK(parse_ratio("2:1") == std::pair<double, double>{2.0, 1.0});
  CHECK(parse_ratio("1.5:1") == std::pair<double, double>{1.5, 1.0});
  CHECK(code_of([] { parse_ratio("2"); }) == ErrorCode::Config);
  CHECK(code_of([] { parse_ratio("a:b"); }) == ErrorCode::Config);

  auto cfg = defaults();
  merge(cfg, Json{{"comet", {{"endpoint", "http://127.0.0.1:9"}, {"batch_limit", 64}}}}, "t");
  const auto comet = comet_config(cfg);
  REQUIRE(comet.has_value());
  CHECK(comet->batch_limit == 64);
  merge(cfg, Json{{"comet", {{"batch_limit", 5000}}}}, "t");
  CHECK(code_of([&] { comet_config(cfg); }) == ErrorCode::Config);

  auto neg = defaults();
  merge(neg, Json{{"composer", {{"seed", -1}}}}, "t");
  CHECK(code_of([&] { composer_config(neg); }) == ErrorCode::Config);
}
