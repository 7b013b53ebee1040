#pragma once

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>

#include "core/benchkit.hpp"
#include "core/comet_client.hpp"
#include "core/composer.hpp"
#include "core/filters.hpp"
#include "core/metrics.hpp"

namespace tarjim::config {

using Json = nlohmann::ordered_json;

// Every recognised key with its default value. Layers may only set keys that
// appear here, with a value of the same JSON type.
Json defaults();

// Overlays `layer` onto `base` in place. Throws Error(Config) on unknown
// keys or type mismatches; integers are accepted where numbers are expected.
void merge(Json& base, const Json& layer, const std::string& where);

// Reads TARJIM_<KEY> for top-level scalars and TARJIM_<SECTION>_<KEY> for
// section keys (upper case). `getenv` is injectable for tests.
Json env_layer(const Json& schema, const std::function<std::optional<std::string>(const std::string&)>& getenv);
Json env_layer(const Json& schema);

Json parse_layer(const std::string& text, const std::string& where);

filters::FilterConfig filter_config(const Json& cfg);
composer::ComposerConfig composer_config(const Json& cfg);
metrics::MetricConfig metric_config(const Json& cfg);
// nullopt when no endpoint is configured.
std::optional<metrics::CometClientConfig> comet_config(const Json& cfg);
benchkit::ValidationConfig validation_config(const Json& cfg);

unsigned workers(const Json& cfg);  // 0 resolves to the processor count
std::size_t bench_concurrency(const Json& cfg);
std::size_t contamination_n(const Json& cfg);

// "2:1" -> {2, 1}
std::pair<double, double> parse_ratio(const std::string& s);

}  // namespace tarjim::config
