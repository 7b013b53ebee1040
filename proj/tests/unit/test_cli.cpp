#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "synth.hpp"

using nlohmann::json;

namespace {

// Runs the CLI with stdout and stderr captured to files in `dir`.
int run(const std::filesystem::path& dir, const std::string& args) {
  const std::string cmd = std::string(TARJIM_CLI_PATH) + " " + args + " >" + (dir / "stdout.txt").string() +
                          " 2>" + (dir / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("cli: filter writes output, report and config sidecar") {
  const auto dir = synth::temp_dir("cli");
  synth::Rng rng(51);
  auto pairs = synth::corpus(rng, 50, 3, 20);
  pairs[0].en = "ok";
  tarjim::write_pairs(pairs, dir / "in.jsonl", tarjim::Format::Jsonl);

  const auto in = (dir / "in.jsonl").string();
  REQUIRE(run(dir, "filter --in " + in + " --out clean.jsonl --report report.json --output-dir " + dir.string()) ==
          0);
  CHECK(tarjim::read_pairs(dir / "clean.jsonl", tarjim::Format::Jsonl).size() == 49);
  const auto report = json::parse(synth::read_file(dir / "report.json"));
  CHECK(report["rejected"]["min_tokens"] == 1);
  const auto sidecar = json::parse(synth::read_file(dir / "clean.jsonl.config.json"));
  CHECK(sidecar["filter"]["min_tokens"] == 3);
  CHECK(synth::read_file(dir / "stderr.txt").find("\"level\"") != std::string::npos);

  // Flags override the config file.
  std::ofstream(dir / "cfg.json") << R"({"filter":{"min_tokens":2}})";
  REQUIRE(run(dir, "--config " + (dir / "cfg.json").string() + " filter --in " + in + " --out " +
                       (dir / "c2.jsonl").string() + " --min-tokens 4") == 0);
  CHECK(json::parse(synth::read_file(dir / "c2.jsonl.config.json"))["filter"]["min_tokens"] == 4);
}

TEST_CASE("cli: usage errors exit 1") {
  const auto dir = synth::temp_dir("cli-usage");
  CHECK(run(dir, "") == 1);
  CHECK(run(dir, "filter --in x.jsonl") == 1);
  CHECK(run(dir, "filter --in x.jsonl --out y.jsonl --no-such-flag") == 1);
  CHECK(run(dir, "transmogrify") == 1);
  CHECK(run(dir, "--help") == 0);
  CHECK(synth::read_file(dir / "stdout.txt").find("filter") != std::string::npos);
}

TEST_CASE("cli: score reports mismatched inputs") {
  const auto dir = synth::temp_dir("cli-score");
  std::ofstream(dir / "hyp.txt") << "one two three four\nfive six seven eight\n";
  std::ofstream(dir / "ref.txt") << "one two three four\n";
  std::ofstream(dir / "ref2.txt") << "one two three four\nfive six seven eight\n";
  CHECK(run(dir, "score --hyp " + (dir / "hyp.txt").string() + " --ref " + (dir / "ref.txt").string() +
                     " --json " + (dir / "s.json").string()) == 1);
  CHECK(synth::read_file(dir / "stderr.txt").find("line count mismatch") != std::string::npos);
  REQUIRE(run(dir, "score --hyp " + (dir / "hyp.txt").string() + " --ref " + (dir / "ref2.txt").string() +
                       " --json " + (dir / "s.json").string()) == 0);
  CHECK(json::parse(synth::read_file(dir / "s.json"))["bleu"]["score"] == doctest::Approx(100.0));
}

TEST_CASE("cli: missing input is an I/O failure") {
  const auto dir = synth::temp_dir("cli-io");
  CHECK(run(dir, "manifest --in " + (dir / "absent.jsonl").string() + " --out " + (dir / "m.json").string()) == 2);
}

TEST_CASE("cli: validate only fails under --strict") {
  const auto dir = synth::temp_dir("cli-validate");
  synth::Rng rng(52);
  tarjim::write_benchmark(synth::benchmark(rng, 20, 10, 50, 100), dir / "b.jsonl");
  const auto args = "validate --benchmark " + (dir / "b.jsonl").string() + " --report " + (dir / "v.json").string();
  CHECK(run(dir, args) == 0);
  CHECK(json::parse(synth::read_file(dir / "v.json"))["origin_balance"]["flag"] == true);
  CHECK(run(dir, args + " --strict") == 1);
  CHECK(run(dir, args + " --strict --tolerance 10") == 0);
}
