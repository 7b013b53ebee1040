#include <doctest.h>

#include <cstdlib>
#include <json.hpp>

#include "core/benchrunner.hpp"
#include "core/report.hpp"
#include "stub_server.hpp"
#include "synth.hpp"

using namespace tarjim;
using namespace tarjim::bench;
using nlohmann::json;

namespace {

std::string profiles_json(const std::string& endpoint, const std::vector<std::pair<std::string, std::string>>& models,
                          const std::string& tmpl = "none") {
  json doc;
  doc["templates"] = json::array({
      {{"id", "chat-basic"},
       {"kind", "chat"},
       {"system", "You translate {source_language} into {target_language}."},
       {"user", "{text}"}},
      {{"id", "raw-basic"}, {"kind", "raw"}, {"user", "{source_language}: {text}\n{target_language}:"}},
  });
  doc["models"] = json::array();
  for (const auto& [name, size] : models) {
    doc["models"].push_back({{"name", name},
                             {"size_label", size},
                             {"endpoint", endpoint},
                             {"template", tmpl},
                             {"retry_base_ms", 1},
                             {"timeout_ms", 5000},
                             {"api_key_env", "TARJIM_TEST_KEY"}});
  }
  return doc.dump();
}

std::vector<BenchmarkEntry> small_benchmark(std::size_t n) {
  synth::Rng rng(21);
  return synth::benchmark(rng, n / 2, n - n / 2, 5, 12);
}

const std::vector<Direction> kBoth = {Direction::Ar2En, Direction::En2Ar};

}  // namespace

TEST_CASE("profiles parse with defaults") {
  const auto p = parse_profiles(profiles_json("http://127.0.0.1:9", {{"m-a", "7B"}}));
  REQUIRE(p.models.size() == 1);
  CHECK(p.models[0].served_model == "m-a");
  CHECK(p.models[0].max_tokens == 512);
  CHECK(p.models[0].temperature == 0.0);
  CHECK(p.templates.size() == 2);
  CHECK(p.find_template("none") == nullptr);
  CHECK(p.find_template("raw-basic")->kind == TemplateKind::Raw);
  CHECK(p.template_hash(p.models[0]) == "none");
  CHECK(p.models[0].params_hash().size() == 16);
}

TEST_CASE("the shipped example profiles load") {
  const auto p = load_profiles(TARJIM_EXAMPLE_PROFILES);
  CHECK(p.templates.size() == 5);
  CHECK(p.models.size() == 3);
  CHECK(p.find_template("completion")->kind == TemplateKind::Raw);
  CHECK(p.models[2].served_model == "mini-latest");
}

TEST_CASE("profile and template errors are config errors") {
  auto code = [](const std::string& text) {
    try {
      parse_profiles(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code("{not json") == ErrorCode::Config);
  CHECK(code(R"({"models":[{"name":"m","endpoint":"http://x","template":"missing"}]})") == ErrorCode::Config);
  CHECK(code(R"({"templates":[{"id":"t","user":"translate this"}],"models":[]})") == ErrorCode::Config);
  CHECK(code(R"({"templates":[{"id":"t","user":"{text} {dialect}"}],"models":[]})") == ErrorCode::Config);
  CHECK(code(R"({"templates":[{"id":"t","kind":"fancy","user":"{text}"}],"models":[]})") == ErrorCode::Config);
  CHECK(code(R"({"models":[{"name":"m","endpoint":"localhost"}]})") == ErrorCode::Config);
  CHECK(code(R"({"models":[{"name":"m"}]})") == ErrorCode::Config);
}

TEST_CASE("prompt rendering") {
  const auto p = parse_profiles(profiles_json("http://127.0.0.1:9", {}));
  ParallelPair pair{"x", "نص عربي", "english text", Origin::Arabic, std::nullopt, {}};

  auto none = render_prompt(nullptr, Direction::Ar2En, pair);
  CHECK(none.raw == std::optional<std::string>("نص عربي"));
  CHECK(none.messages == std::vector<ChatMessage>{{"user", "نص عربي"}});

  auto chat = render_prompt(p.find_template("chat-basic"), Direction::En2Ar, pair);
  CHECK_FALSE(chat.raw.has_value());
  CHECK(chat.messages == std::vector<ChatMessage>{{"system", "You translate English into Arabic."},
                                                  {"user", "english text"}});

  auto raw = render_prompt(p.find_template("raw-basic"), Direction::Ar2En, pair);
  CHECK(raw.raw == std::optional<std::string>("Arabic: نص عربي\nEnglish:"));
}

TEST_CASE("size labels") {
  CHECK(parse_size_label("1.5B") == doctest::Approx(1.5e9));
  CHECK(parse_size_label("350M") == doctest::Approx(3.5e8));
  CHECK(parse_size_label("9b") == doctest::Approx(9e9));
  CHECK_FALSE(parse_size_label("large").has_value());
  CHECK(parse_directions("ar2en,en2ar") == kBoth);
  CHECK(parse_directions("en2ar") == std::vector<Direction>{Direction::En2Ar});
  CHECK_THROWS_AS(parse_directions("fr2en"), Error);
}

TEST_CASE("translate_one sends a bearer key and reads the completion") {
  stub::StubServer s;
  s.start();
  ::setenv("TARJIM_TEST_KEY", "secret-1", 1);
  const auto p = parse_profiles(profiles_json(s.url(), {{"m", "7B"}}));
  ParallelPair pair{"x", "نص", "text here", Origin::Arabic, std::nullopt, {}};
  const auto out = translate_one(p.models[0], render_prompt(nullptr, Direction::En2Ar, pair));
  ::unsetenv("TARJIM_TEST_KEY");
  CHECK(out.hypothesis == "text here");
  CHECK(out.attempts == 1);
  const auto seen = s.seen();
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].path == "/v1/chat/completions");
  CHECK(seen[0].authorization == "Bearer secret-1");
  const auto body = json::parse(seen[0].body);
  CHECK(body["model"] == "m");
  CHECK(body["temperature"] == 0.0);
  CHECK(body["messages"][0]["content"] == "text here");
}

TEST_CASE("translate_one retries 5xx and stops on 4xx") {
  stub::StubServer s;
  s.start();
  const auto p = parse_profiles(profiles_json(s.url(), {{"m", "7B"}}));
  ParallelPair pair{"x", "نص", "text", Origin::Arabic, std::nullopt, {}};
  s.script_statuses({502});
  auto ok = translate_one(p.models[0], render_prompt(nullptr, Direction::Ar2En, pair));
  CHECK(ok.attempts == 2);
  CHECK(ok.hypothesis == "نص");

  s.script_statuses({404});
  try {
    translate_one(p.models[0], render_prompt(nullptr, Direction::Ar2En, pair));
    FAIL("expected an error");
  } catch (const TranslateError& e) {
    CHECK(e.code() == ErrorCode::Protocol);
    CHECK(e.attempts() == 1);
  }
}

TEST_CASE("cache keys separate every input") {
  const auto k = cache_key("m", Direction::Ar2En, "p1", "t", "h");
  CHECK(k.size() == 64);
  CHECK(k == cache_key("m", Direction::Ar2En, "p1", "t", "h"));
  CHECK(k != cache_key("m2", Direction::Ar2En, "p1", "t", "h"));
  CHECK(k != cache_key("m", Direction::En2Ar, "p1", "t", "h"));
  CHECK(k != cache_key("m", Direction::Ar2En, "p2", "t", "h"));
  CHECK(k != cache_key("m", Direction::Ar2En, "p1", "t2", "h"));
  CHECK(k != cache_key("m", Direction::Ar2En, "p1", "t", "h2"));
}

TEST_CASE("runs are cached and resumable") {
  stub::StubServer s;
  s.start();
  const auto dir = synth::temp_dir("bench");
  const auto profiles = parse_profiles(profiles_json(s.url(), {{"m", "7B"}}));
  const auto entries = small_benchmark(20);

  // One request fails terminally; it is recorded but not cached.
  s.script_statuses({400});
  auto first = run_benchmark(profiles, entries, kBoth, dir, 4);
  CHECK(first.records.size() == 40);
  CHECK(first.failures == 1);
  CHECK(first.requests == 40);
  CHECK(first.cache_hits == 0);

  auto second = run_benchmark(profiles, entries, kBoth, dir, 4);
  CHECK(second.failures == 0);
  CHECK(second.requests == 1);
  CHECK(second.cache_hits == 39);

  auto third = run_benchmark(profiles, entries, kBoth, dir, 4);
  CHECK(third.requests == 0);
  CHECK(third.cache_hits == 40);
  // 39 + 1 successes, plus the scripted failure.
  CHECK(s.chat_requests() == 41);

  // Records come back in model, direction, benchmark order.
  CHECK(third.records[0].pair_id == entries[0].pair.id);
  CHECK(third.records[0].direction == Direction::Ar2En);
  CHECK(third.records[20].direction == Direction::En2Ar);
  CHECK(third.records[5].hypothesis == entries[5].pair.ar);

  const auto m = read_manifest(dir);
  CHECK(m.benchmark_pairs == 20);
  CHECK(m.directions == kBoth);
  REQUIRE(m.models.size() == 1);
  CHECK(m.models[0].size_label == "7B");
}

TEST_CASE("changing the prompt template invalidates the cache") {
  stub::StubServer s;
  s.start();
  const auto dir = synth::temp_dir("bench-tmpl");
  const auto entries = small_benchmark(6);
  run_benchmark(parse_profiles(profiles_json(s.url(), {{"m", "7B"}}, "none")), entries, kBoth, dir, 2);
  const auto again = run_benchmark(parse_profiles(profiles_json(s.url(), {{"m", "7B"}}, "chat-basic")), entries,
                                   kBoth, dir, 2);
  CHECK(again.cache_hits == 0);
  CHECK(again.requests == 12);
}

TEST_CASE("report rows are ordered by size and holes are marked") {
  stub::StubServer s(stub::Options{stub::ReplyMode::Lookup});
  s.start();
  const auto entries = small_benchmark(10);
  for (const auto& e : entries) {
    s.add_lookup(e.pair.ar, e.pair.en);
    s.add_lookup(e.pair.en, e.pair.ar);
  }
  const auto dir = synth::temp_dir("bench-report");
  const auto profiles = parse_profiles(profiles_json(s.url(), {{"big", "7B"}, {"tiny", "350M"}, {"mid", "1.5B"}}));
  const auto run = run_benchmark(profiles, entries, kBoth, dir, 4);
  REQUIRE(run.failures == 0);

  metrics::MetricConfig cfg;
  const auto report = score_and_report(run.manifest, RunCache(dir), entries, cfg);
  REQUIRE(report.models.size() == 3);
  CHECK(report.models[0].info.name == "tiny");
  CHECK(report.models[1].info.name == "mid");
  CHECK(report.models[2].info.name == "big");
  for (const auto& m : report.models) {
    for (auto d : kBoth) {
      CHECK(m.cells.at(d).bleu.score == doctest::Approx(100.0));
      CHECK(m.cells.at(d).chrf.score == doctest::Approx(100.0));
      CHECK(m.cells.at(d).covered == 10);
    }
  }
  const auto md = report.markdown();
  CHECK(md.find("| tiny | 350M | 100.00 | 100.00 | 100.00 | 100.00 |") != std::string::npos);
  CHECK(md.find("†") == std::string::npos);
  CHECK(score_and_report(run.manifest, RunCache(dir), entries, cfg).markdown() == md);

  // Drop two records of one model: they become holes scored as empty output.
  std::vector<RunRecord> records = run.records;
  std::erase_if(records, [&](const RunRecord& r) {
    return r.model == "mid" && r.direction == Direction::En2Ar &&
           (r.pair_id == entries[0].pair.id || r.pair_id == entries[1].pair.id);
  });
  const auto holed = score_records(run.manifest, records, entries, cfg);
  const auto& mid = holed.models[1];
  CHECK(mid.missing_total() == 2);
  CHECK(mid.cells.at(Direction::En2Ar).covered == 8);
  CHECK(mid.cells.at(Direction::En2Ar).bleu.score < 100.0);
  CHECK(mid.cells.at(Direction::Ar2En).bleu.score == doctest::Approx(100.0));
  CHECK(holed.markdown().find("| mid † | 1.5B |") != std::string::npos);
  CHECK(holed.csv().find("mid,1.5B,100.00,100.00,10/10,") != std::string::npos);
  CHECK(holed.csv().rfind("model,size,ar2en_chrf_pp,ar2en_bleu,ar2en_coverage,en2ar_chrf_pp", 0) == 0);

  const auto j = json::parse(holed.json());
  CHECK(j["models"][1]["cells"]["en2ar"]["coverage"]["covered"] == 8);
  CHECK(j["models"][1]["cells"]["en2ar"]["missing_ids"].size() == 2);

  const auto out = synth::temp_dir("bench-out");
  write_report(holed, out);
  CHECK(synth::read_file(out / "report.md") == holed.markdown());
  CHECK(synth::read_file(out / "report.csv") == holed.csv());
  CHECK(std::filesystem::exists(out / "report.json"));
}

TEST_CASE("COMET columns appear only with a scoring service") {
  stub::StubServer s(stub::Options{stub::ReplyMode::Lookup});
  s.start();
  const auto entries = small_benchmark(6);
  for (const auto& e : entries) {
    s.add_lookup(e.pair.ar, e.pair.en);
    s.add_lookup(e.pair.en, e.pair.ar);
  }
  const auto dir = synth::temp_dir("bench-comet");
  const auto run = run_benchmark(parse_profiles(profiles_json(s.url(), {{"m", "7B"}})), entries, kBoth, dir, 2);
  metrics::CometClientConfig comet;
  comet.endpoint = s.url();
  comet.retry.base_delay = std::chrono::milliseconds(1);
  const auto report = score_records(run.manifest, run.records, entries, {}, comet);
  CHECK(report.comet_model_id == std::optional<std::string>("stub-comet"));
  CHECK(report.models[0].cells.at(Direction::Ar2En).comet->system == doctest::Approx(95.0));
  CHECK(report.markdown().find("AR→EN COMET") != std::string::npos);
  CHECK(score_records(run.manifest, run.records, entries, {}).markdown().find("COMET") == std::string::npos);
}
