#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tarjim::http {

struct Url {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // no trailing slash; may be empty
};

// Throws Error(Config) on anything that is not http(s)://host[:port][/path].
Url parse_url(const std::string& url);

struct Response {
  int status = 0;
  std::string body;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

// One POST with a JSON body. Transport failures (connect, timeout) throw
// Error(Network); any HTTP status is returned.
Response post_json(const Url& base, const std::string& path, const std::string& body,
                   const Headers& headers, std::chrono::milliseconds timeout);

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;
  bool jitter = true;

  // Delay before retry number `attempt` (1-based); jitter scales by [0.5, 1.5).
  std::chrono::milliseconds delay(int attempt, std::uint64_t jitter_seed) const;
};

struct AttemptOutcome {
  Response response;
  int attempts = 0;
};

// Retries transport errors and 5xx responses with exponential backoff;
// returns the first non-5xx response. Throws Error(Network) when retries are
// exhausted.
AttemptOutcome post_with_retries(const Url& base, const std::string& path, const std::string& body,
                                 const Headers& headers, std::chrono::milliseconds timeout,
                                 const RetryPolicy& policy);

}  // namespace tarjim::http
