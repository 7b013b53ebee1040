#include "stub_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tarjim::stub {

using nlohmann::json;

namespace {

std::set<std::string> word_set(const std::string& s) {
  std::istringstream in(s);
  std::set<std::string> out;
  for (std::string w; in >> w;) out.insert(w);
  return out;
}

// Deterministic stand-in for a learned score in [0, 1].
double pseudo_comet(const std::string& mt, const std::string& ref) {
  if (mt == ref) return 0.95;
  const auto a = word_set(mt), b = word_set(ref);
  std::size_t shared = 0;
  for (const auto& w : a) shared += b.count(w);
  const std::size_t denom = std::max<std::size_t>(1, std::max(a.size(), b.size()));
  return 0.1 + 0.8 * static_cast<double>(shared) / static_cast<double>(denom);
}

void error_body(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", {{"message", message}}}}.dump(), "application/json");
}

}  // namespace

StubServer::StubServer(Options opts) : opts_(std::move(opts)), server_(std::make_unique<httplib::Server>()) {}

StubServer::~StubServer() { stop(); }

void StubServer::load_benchmark(const std::string& jsonl_path) {
  std::ifstream in(jsonl_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + jsonl_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = json::parse(line);
    const auto ar = j.at("ar").get<std::string>();
    const auto en = j.at("en").get<std::string>();
    add_lookup(ar, en);
    add_lookup(en, ar);
  }
}

void StubServer::add_lookup(const std::string& source, const std::string& target) {
  std::lock_guard lock(mu_);
  lookup_[source] = target;
}

void StubServer::script_statuses(std::vector<int> statuses) {
  std::lock_guard lock(mu_);
  scripted_.assign(statuses.begin(), statuses.end());
}

std::string StubServer::reply_for(const std::string& content) const {
  if (opts_.mode == ReplyMode::Echo) return content;
  std::lock_guard lock(mu_);
  if (auto it = lookup_.find(content); it != lookup_.end()) return it->second;
  // Templated prompts embed the source; pick the longest known source inside.
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [src, tgt] : lookup_) {
    if (src.size() > best_len && content.find(src) != std::string::npos) {
      best = &tgt;
      best_len = src.size();
    }
  }
  return best ? *best : content;
}

void StubServer::start() {
  auto take_scripted = [this](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu_);
    seen_.push_back({req.path, req.get_header_value("Authorization"), req.body});
    if (scripted_.empty()) return false;
    const int status = scripted_.front();
    scripted_.pop_front();
    res.status = status;
    res.set_content(json{{"error", {{"message", "scripted failure"}}}}.dump(), "application/json");
    return true;
  };

  auto chat = [this, take_scripted](const httplib::Request& req, httplib::Response& res) {
    ++chat_requests_;
    if (take_scripted(req, res)) return;
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return error_body(res, 400, "malformed JSON");
    }
    std::string content;
    if (body.contains("messages")) {
      for (const auto& m : body["messages"]) {
        if (m.value("role", "") == "user") content = m.value("content", "");
      }
    }
    const auto reply = reply_for(content);
    json out = {{"id", "stub-" + std::to_string(chat_requests_.load())},
                {"object", "chat.completion"},
                {"model", body.value("model", "stub")},
                {"choices",
                 json::array({{{"index", 0},
                               {"message", {{"role", "assistant"}, {"content", reply}}},
                               {"finish_reason", "stop"}}})}};
    res.set_content(out.dump(), "application/json");
  };
  server_->Post("/v1/chat/completions", chat);
  server_->Post("/chat/completions", chat);

  server_->Post("/score", [this, take_scripted](const httplib::Request& req, httplib::Response& res) {
    ++score_requests_;
    if (take_scripted(req, res)) return;
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      return error_body(res, 400, "malformed JSON");
    }
    if (!body.contains("pairs") || !body["pairs"].is_array() || body["pairs"].empty()) {
      return error_body(res, 400, "pairs must be a non-empty list");
    }
    if (body["pairs"].size() > 4096) return error_body(res, 413, "too many pairs");
    json segments = json::array();
    double sum = 0.0;
    for (const auto& p : body["pairs"]) {
      const auto src = p.value("src", ""), mt = p.value("mt", ""), ref = p.value("ref", "");
      if (src.empty() || mt.empty() || ref.empty()) return error_body(res, 400, "empty field");
      const double s = pseudo_comet(mt, ref);
      segments.push_back(s);
      sum += s;
    }
    json out = {{"segments", segments},
                {"system", sum / static_cast<double>(segments.size())},
                {"model_id", opts_.comet_model_id}};
    res.set_content(out.dump(), "application/json");
  });

  server_->Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(json{{"status", "ok"}, {"model_id", opts_.comet_model_id}, {"device", "cpu"}}.dump(),
                    "application/json");
  });

  if (opts_.port == 0) {
    port_ = server_->bind_to_any_port(opts_.host);
  } else {
    port_ = server_->bind_to_port(opts_.host, opts_.port) ? opts_.port : -1;
  }
  if (port_ <= 0) throw std::runtime_error("stub: cannot bind " + opts_.host);
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void StubServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void StubServer::wait() {
  if (thread_.joinable()) thread_.join();
}

std::string StubServer::url() const { return "http://" + opts_.host + ":" + std::to_string(port_); }

std::vector<SeenRequest> StubServer::seen() const {
  std::lock_guard lock(mu_);
  return seen_;
}

}  // namespace tarjim::stub
