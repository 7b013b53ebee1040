#include "core/http.hpp"

#include <httplib.h>

#include <thread>

#include "core/error.hpp"

namespace tarjim::http {

Url parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) fail(ErrorCode::Config, "endpoint URL lacks a scheme: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") fail(ErrorCode::Config, "unsupported URL scheme: " + url);
  const auto host_begin = scheme_end + 3;
  const auto path_begin = url.find('/', host_begin);
  Url out;
  out.scheme_host_port = url.substr(0, path_begin);
  if (out.scheme_host_port.size() <= host_begin) fail(ErrorCode::Config, "endpoint URL lacks a host: " + url);
  if (path_begin != std::string::npos) {
    out.path = url.substr(path_begin);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  }
  return out;
}

Response post_json(const Url& base, const std::string& path, const std::string& body,
                   const Headers& headers, std::chrono::milliseconds timeout) {
  httplib::Client client(base.scheme_host_port);
  if (!client.is_valid()) fail(ErrorCode::Config, "invalid endpoint " + base.scheme_host_port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(base.path + path, h, body, "application/json");
  if (!res) {
    fail(ErrorCode::Network, "POST " + base.scheme_host_port + base.path + path + " failed: " +
                                 httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

std::chrono::milliseconds RetryPolicy::delay(int attempt, std::uint64_t jitter_seed) const {
  double ms = static_cast<double>(base_delay.count());
  for (int i = 1; i < attempt; ++i) ms *= factor;
  if (jitter) {
    std::uint64_t x = jitter_seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt);
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 29;
    ms *= 0.5 + static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

AttemptOutcome post_with_retries(const Url& base, const std::string& path, const std::string& body,
                                 const Headers& headers, std::chrono::milliseconds timeout,
                                 const RetryPolicy& policy) {
  const auto seed = static_cast<std::uint64_t>(std::hash<std::string>{}(body));
  std::string last_error;
  for (int attempt = 1;; ++attempt) {
    try {
      Response r = post_json(base, path, body, headers, timeout);
      if (r.status < 500) return {std::move(r), attempt};
      last_error = "HTTP " + std::to_string(r.status);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Network) throw;
      last_error = e.what();
    }
    if (attempt > policy.max_retries) {
      fail(ErrorCode::Network, "giving up after " + std::to_string(attempt) + " attempts: " + last_error);
    }
    std::this_thread::sleep_for(policy.delay(attempt, seed));
  }
}

}  // namespace tarjim::http
