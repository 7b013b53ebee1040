#pragma once

// Local stand-in for a chat-completions endpoint and a COMET scoring service.
// Used by the tests and shipped as `tarjim-stub` for offline dry runs.

#include <atomic>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace tarjim::stub {

enum class ReplyMode {
  Echo,    // reply with the last user message
  Lookup,  // reply with the reference translation of the source found in the prompt
};

struct Options {
  ReplyMode mode = ReplyMode::Echo;
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  std::string comet_model_id = "stub-comet";
};

struct SeenRequest {
  std::string path;
  std::string authorization;
  std::string body;
};

class StubServer {
 public:
  explicit StubServer(Options opts = {});
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  // Adds source -> target entries for Lookup mode from a benchmark JSONL
  // (both directions).
  void load_benchmark(const std::string& jsonl_path);
  void add_lookup(const std::string& source, const std::string& target);

  // The next statuses.size() requests (any route) answer with these HTTP
  // statuses and an error body before normal handling resumes.
  void script_statuses(std::vector<int> statuses);

  void start();  // returns once the socket is listening
  void stop();
  void wait();   // blocks until stop() (for the standalone binary)

  int port() const { return port_; }
  std::string url() const;
  std::size_t chat_requests() const { return chat_requests_.load(); }
  std::size_t score_requests() const { return score_requests_.load(); }
  std::vector<SeenRequest> seen() const;

 private:
  std::string reply_for(const std::string& user_content) const;

  Options opts_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> chat_requests_{0};
  std::atomic<std::size_t> score_requests_{0};
  mutable std::mutex mu_;
  std::deque<int> scripted_;
  std::vector<SeenRequest> seen_;
  std::map<std::string, std::string> lookup_;
};

}  // namespace tarjim::stub
