#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <thread>

#include "core/error.hpp"

namespace tarjim::config {

Json defaults() {
  return Json::parse(R"({
    "log_level": "info",
    "output_dir": ".",
    "workers": 0,
    "filter": {
      "min_tokens": 3,
      "ar_frac": 0.8,
      "en_frac": 0.8,
      "max_ratio": 3.0,
      "ratio_floor": 30,
      "dedup_lowercase_en": true,
      "sample_limit": 20
    },
    "composer": {
      "mode": "bi",
      "ratio": "2:1",
      "short_frac": 0.15,
      "short_min_words": 2,
      "short_max_words": 30,
      "pretrain_context": 2048,
      "finetune_context": 512,
      "seed": 7,
      "pair_separator": " ",
      "tag_separator": " "
    },
    "metrics": {
      "bleu_order": 4,
      "bleu_smoothing": "exp",
      "chrf_char_order": 6,
      "chrf_word_order": 2,
      "chrf_beta": 2.0,
      "lowercase": false
    },
    "comet": {
      "endpoint": "",
      "batch_limit": 512,
      "batch_size": 32,
      "max_in_flight": 1,
      "timeout_ms": 120000,
      "max_retries": 3,
      "retry_base_ms": 1000
    },
    "bench": {
      "concurrency": 8,
      "directions": "ar2en,en2ar"
    },
    "validate": {
      "balance_tolerance": 0,
      "band_min_words": 50,
      "band_max_words": 100,
      "violator_limit": 50
    },
    "contamination": {
      "n": 8
    }
  })");
}

namespace {

bool same_kind(const Json& want, const Json& got) {
  if (want.is_number_float()) return got.is_number();
  if (want.is_number_unsigned() || want.is_number_integer()) return got.is_number_integer();
  return want.type() == got.type();
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Json from_env_string(const Json& want, const std::string& value, const std::string& var) {
  try {
    if (want.is_boolean()) {
      const auto v = upper(value);
      if (v == "1" || v == "TRUE" || v == "YES") return true;
      if (v == "0" || v == "FALSE" || v == "NO") return false;
      fail(ErrorCode::Config, var + ": expected a boolean");
    }
    if (want.is_number_float()) {
      std::size_t used = 0;
      const double d = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return d;
    }
    if (want.is_number()) {
      std::size_t used = 0;
      const long long n = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return n;
    }
  } catch (const std::logic_error&) {
    fail(ErrorCode::Config, var + ": cannot parse '" + value + "'");
  }
  return value;
}

template <class T>
T get(const Json& cfg, const char* section, const char* key) {
  const auto& v = cfg.at(section).at(key);
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (v.get<long long>() < 0) fail(ErrorCode::Config, std::string(section) + "." + key + " must be >= 0");
  }
  return v.get<T>();
}

}  // namespace

void merge(Json& base, const Json& layer, const std::string& where) {
  if (!layer.is_object()) fail(ErrorCode::Config, where + ": expected a JSON object");
  for (const auto& [key, value] : layer.items()) {
    if (!base.contains(key)) fail(ErrorCode::Config, where + ": unknown key '" + key + "'");
    auto& slot = base[key];
    if (slot.is_object()) {
      merge(slot, value, where + "." + key);
    } else if (!same_kind(slot, value)) {
      fail(ErrorCode::Config, where + ": key '" + key + "' expects " + std::string(slot.type_name()));
    } else {
      slot = slot.is_number_float() ? Json(value.get<double>()) : value;
    }
  }
}

Json env_layer(const Json& schema,
               const std::function<std::optional<std::string>(const std::string&)>& getenv) {
  Json out = Json::object();
  for (const auto& [key, value] : schema.items()) {
    if (value.is_object()) {
      for (const auto& [sub, want] : value.items()) {
        const auto var = "TARJIM_" + upper(key) + "_" + upper(sub);
        if (auto v = getenv(var)) out[key][sub] = from_env_string(want, *v, var);
      }
    } else {
      const auto var = "TARJIM_" + upper(key);
      if (auto v = getenv(var)) out[key] = from_env_string(value, *v, var);
    }
  }
  return out;
}

Json env_layer(const Json& schema) {
  return env_layer(schema, [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  });
}

Json parse_layer(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Config, where + ": " + e.what());
  }
}

std::pair<double, double> parse_ratio(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    std::size_t u1 = 0, u2 = 0;
    const auto a = s.substr(0, colon), b = s.substr(colon + 1);
    const double x = std::stod(a, &u1), y = std::stod(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::logic_error&) {
    fail(ErrorCode::Config, "ratio must look like 2:1, got '" + s + "'");
  }
}

filters::FilterConfig filter_config(const Json& cfg) {
  filters::FilterConfig f;
  f.min_tokens = get<int>(cfg, "filter", "min_tokens");
  f.arabic_letter_fraction_min = get<double>(cfg, "filter", "ar_frac");
  f.latin_letter_fraction_min = get<double>(cfg, "filter", "en_frac");
  f.max_char_ratio = get<double>(cfg, "filter", "max_ratio");
  f.ratio_min_chars = get<int>(cfg, "filter", "ratio_floor");
  f.dedup_normalize_case = get<bool>(cfg, "filter", "dedup_lowercase_en");
  f.sample_limit = get<std::size_t>(cfg, "filter", "sample_limit");
  f.validate();
  return f;
}

composer::ComposerConfig composer_config(const Json& cfg) {
  composer::ComposerConfig c;
  c.mode = composer::parse_mode(get<std::string>(cfg, "composer", "mode"));
  std::tie(c.ar_source_weight, c.en_source_weight) = parse_ratio(get<std::string>(cfg, "composer", "ratio"));
  c.short_fraction = get<double>(cfg, "composer", "short_frac");
  c.short_min_words = get<int>(cfg, "composer", "short_min_words");
  c.short_max_words = get<int>(cfg, "composer", "short_max_words");
  c.pretrain_context = get<int>(cfg, "composer", "pretrain_context");
  c.finetune_context = get<int>(cfg, "composer", "finetune_context");
  c.seed = get<std::uint64_t>(cfg, "composer", "seed");
  c.pair_separator = get<std::string>(cfg, "composer", "pair_separator");
  c.tag_separator = get<std::string>(cfg, "composer", "tag_separator");
  c.validate();
  return c;
}

metrics::MetricConfig metric_config(const Json& cfg) {
  metrics::MetricConfig m;
  m.bleu_max_order = get<int>(cfg, "metrics", "bleu_order");
  const auto smooth = get<std::string>(cfg, "metrics", "bleu_smoothing");
  if (smooth == "exp") {
    m.bleu_smoothing = metrics::Smoothing::ExpFloor;
  } else if (smooth == "none") {
    m.bleu_smoothing = metrics::Smoothing::None;
  } else {
    fail(ErrorCode::Config, "metrics.bleu_smoothing must be exp or none");
  }
  m.chrf_char_order = get<int>(cfg, "metrics", "chrf_char_order");
  m.chrf_word_order = get<int>(cfg, "metrics", "chrf_word_order");
  m.chrf_beta = get<double>(cfg, "metrics", "chrf_beta");
  m.lowercase = get<bool>(cfg, "metrics", "lowercase");
  m.validate();
  return m;
}

std::optional<metrics::CometClientConfig> comet_config(const Json& cfg) {
  const auto endpoint = get<std::string>(cfg, "comet", "endpoint");
  if (endpoint.empty()) return std::nullopt;
  metrics::CometClientConfig c;
  c.endpoint = endpoint;
  c.batch_limit = get<std::size_t>(cfg, "comet", "batch_limit");
  c.service_batch_size = get<std::size_t>(cfg, "comet", "batch_size");
  c.max_in_flight = get<std::size_t>(cfg, "comet", "max_in_flight");
  c.timeout = std::chrono::milliseconds(get<long long>(cfg, "comet", "timeout_ms"));
  c.retry.max_retries = get<int>(cfg, "comet", "max_retries");
  c.retry.base_delay = std::chrono::milliseconds(get<long long>(cfg, "comet", "retry_base_ms"));
  if (c.batch_limit == 0 || c.batch_limit > 4096) fail(ErrorCode::Config, "comet.batch_limit must be in [1, 4096]");
  if (c.service_batch_size == 0 || c.max_in_flight == 0) {
    fail(ErrorCode::Config, "comet.batch_size and comet.max_in_flight must be >= 1");
  }
  return c;
}

benchkit::ValidationConfig validation_config(const Json& cfg) {
  benchkit::ValidationConfig v;
  v.balance_tolerance = get<std::size_t>(cfg, "validate", "balance_tolerance");
  v.band_min_words = get<std::size_t>(cfg, "validate", "band_min_words");
  v.band_max_words = get<std::size_t>(cfg, "validate", "band_max_words");
  v.violator_limit = get<std::size_t>(cfg, "validate", "violator_limit");
  if (v.band_min_words > v.band_max_words) fail(ErrorCode::Config, "validate.band_min_words > band_max_words");
  return v;
}

unsigned workers(const Json& cfg) {
  const auto w = cfg.at("workers").get<long long>();
  if (w < 0) fail(ErrorCode::Config, "workers must be >= 0");
  if (w == 0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(w);
}

std::size_t bench_concurrency(const Json& cfg) {
  const auto c = get<std::size_t>(cfg, "bench", "concurrency");
  if (c == 0) fail(ErrorCode::Config, "bench.concurrency must be >= 1");
  return c;
}

std::size_t contamination_n(const Json& cfg) { return get<std::size_t>(cfg, "contamination", "n"); }

}  // namespace tarjim::config
