#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/http.hpp"

namespace tarjim::metrics {

struct CometTriple {
  std::string src;
  std::string mt;
  std::string ref;
};

struct CometResult {
  std::vector<double> segments;      // 0-100
  std::vector<double> raw_segments;  // service-native [0, 1]
  double system = 0.0;               // mean of segments, 0-100
  std::string model_id;
  std::size_t requests = 0;
};

// Raised when a chunk fails after retries; carries how many segments were
// scored before the failure.
class CometError : public Error {
 public:
  CometError(ErrorCode code, const std::string& what, std::size_t completed)
      : Error(code, what), completed_(completed) {}
  std::size_t completed() const noexcept { return completed_; }

 private:
  std::size_t completed_;
};

struct CometClientConfig {
  std::string endpoint;           // service base URL; POSTs go to <endpoint>/score
  std::size_t batch_limit = 512;  // triples per request
  std::size_t service_batch_size = 32;
  std::size_t max_in_flight = 1;
  std::chrono::milliseconds timeout{120000};
  http::RetryPolicy retry;
};

// Client for the scoring service's POST /score contract:
//   request  {"pairs":[{"src","mt","ref"}...], "batch_size": n}
//   response {"segments":[...], "system": x, "model_id": "..."}
class CometClient {
 public:
  explicit CometClient(CometClientConfig cfg);
  CometResult score(const std::vector<CometTriple>& triples) const;

 private:
  CometClientConfig cfg_;
  http::Url url_;
};

}  // namespace tarjim::metrics
