// tarjim-stub: offline chat-completions and scoring endpoint.
//
//   tarjim-stub --port 8089 --mode lookup --benchmark t25.jsonl

#include <CLI11.hpp>

#include <pthread.h>

#include <csignal>
#include <iostream>

#include "stub_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Local stand-in for a chat-completions endpoint and a COMET /score service"};
  tarjim::stub::Options opts;
  std::string mode = "echo";
  std::string benchmark;
  app.add_option("--host", opts.host, "Bind address");
  app.add_option("--port", opts.port, "Port (0 picks a free one)");
  app.add_option("--mode", mode, "echo or lookup")->check(CLI::IsMember({"echo", "lookup"}));
  app.add_option("--benchmark", benchmark, "Benchmark JSONL providing lookup translations");
  app.add_option("--comet-model-id", opts.comet_model_id, "model_id reported by /score");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr) == 0 ? 0 : 1;
  }
  opts.mode = mode == "lookup" ? tarjim::stub::ReplyMode::Lookup : tarjim::stub::ReplyMode::Echo;

  try {
    tarjim::stub::StubServer server(opts);
    if (!benchmark.empty()) server.load_benchmark(benchmark);
    // Block the signals before the server thread starts so only sigwait sees them.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    server.start();
    std::cerr << "{\"event\":\"listening\",\"url\":\"" << server.url() << "\"}" << std::endl;
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  } catch (const std::exception& e) {
    std::cerr << "{\"level\":\"error\",\"message\":\"" << e.what() << "\"}" << std::endl;
    return 2;
  }
  return 0;
}
