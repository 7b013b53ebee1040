#include "core/comet_client.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <thread>

namespace tarjim::metrics {

using nlohmann::json;

CometClient::CometClient(CometClientConfig cfg) : cfg_(std::move(cfg)), url_(http::parse_url(cfg_.endpoint)) {
  if (cfg_.batch_limit == 0) fail(ErrorCode::Config, "COMET batch limit must be >= 1");
  if (cfg_.max_in_flight == 0) cfg_.max_in_flight = 1;
}

namespace {

struct ChunkResult {
  std::vector<double> raw;
  std::string model_id;
};

ChunkResult parse_response(const http::Response& r, std::size_t expected) {
  if (r.status != 200) {
    fail(r.status >= 500 ? ErrorCode::Network : ErrorCode::Protocol,
         "COMET service returned HTTP " + std::to_string(r.status) + ": " + r.body.substr(0, 200));
  }
  json j;
  try {
    j = json::parse(r.body);
  } catch (const json::parse_error&) {
    fail(ErrorCode::Protocol, "COMET service returned malformed JSON");
  }
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array()) {
    fail(ErrorCode::Protocol, "COMET response lacks a segments array");
  }
  ChunkResult out;
  for (const auto& v : j["segments"]) {
    if (!v.is_number()) fail(ErrorCode::Protocol, "COMET segment score is not a number");
    out.raw.push_back(v.get<double>());
  }
  if (out.raw.size() != expected) {
    fail(ErrorCode::Protocol, "COMET response has " + std::to_string(out.raw.size()) + " segments, expected " +
                                  std::to_string(expected));
  }
  if (auto it = j.find("model_id"); it != j.end() && it->is_string()) out.model_id = it->get<std::string>();
  return out;
}

}  // namespace

CometResult CometClient::score(const std::vector<CometTriple>& triples) const {
  if (triples.empty()) fail(ErrorCode::InvalidArgument, "empty COMET batch");
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    if (t.src.empty() || t.mt.empty() || t.ref.empty()) {
      fail(ErrorCode::InvalidArgument, "COMET triple " + std::to_string(i) + " has an empty field");
    }
  }

  const std::size_t chunks = (triples.size() + cfg_.batch_limit - 1) / cfg_.batch_limit;
  std::vector<std::optional<ChunkResult>> results(chunks);
  std::vector<std::string> errors(chunks);
  std::vector<ErrorCode> codes(chunks, ErrorCode::Internal);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * cfg_.batch_limit;
    const std::size_t end = std::min(triples.size(), begin + cfg_.batch_limit);
    json body;
    body["pairs"] = json::array();
    for (std::size_t i = begin; i < end; ++i) {
      body["pairs"].push_back({{"src", triples[i].src}, {"mt", triples[i].mt}, {"ref", triples[i].ref}});
    }
    body["batch_size"] = cfg_.service_batch_size;
    try {
      auto outcome = http::post_with_retries(url_, "/score", body.dump(), {}, cfg_.timeout, cfg_.retry);
      results[c] = parse_response(outcome.response, end - begin);
    } catch (const Error& e) {
      errors[c] = e.what();
      codes[c] = e.code();
    }
  };

  // Waves of at most max_in_flight concurrent requests.
  for (std::size_t wave = 0; wave < chunks; wave += cfg_.max_in_flight) {
    const std::size_t wave_end = std::min(chunks, wave + cfg_.max_in_flight);
    if (wave_end - wave == 1) {
      run_chunk(wave);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t c = wave; c < wave_end; ++c) pool.emplace_back(run_chunk, c);
    }
    for (std::size_t c = wave; c < wave_end; ++c) {
      if (!results[c]) {
        throw CometError(codes[c], "COMET chunk " + std::to_string(c) + " failed: " + errors[c],
                         c * cfg_.batch_limit);
      }
    }
  }

  CometResult out;
  out.requests = chunks;
  for (auto& r : results) {
    out.raw_segments.insert(out.raw_segments.end(), r->raw.begin(), r->raw.end());
    if (out.model_id.empty()) out.model_id = r->model_id;
  }
  double sum = 0.0;
  for (double v : out.raw_segments) {
    out.segments.push_back(v * 100.0);
    sum += v * 100.0;
  }
  out.system = sum / static_cast<double>(out.segments.size());
  return out;
}

}  // namespace tarjim::metrics
