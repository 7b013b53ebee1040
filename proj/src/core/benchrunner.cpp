#include "core/benchrunner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/http.hpp"
#include "core/text.hpp"

namespace tarjim::bench {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::regex& placeholder_re() {
  static const std::regex re(R"(\{([a-z_]+)\})");
  return re;
}

void check_placeholders(const std::string& id, const std::string& s) {
  for (auto it = std::sregex_iterator(s.begin(), s.end(), placeholder_re()); it != std::sregex_iterator(); ++it) {
    const std::string name = (*it)[1];
    if (name != "source_language" && name != "target_language" && name != "text") {
      fail(ErrorCode::Config, "template '" + id + "': unresolvable placeholder {" + name + "}");
    }
  }
}

}  // namespace

void PromptTemplate::validate() const {
  if (id.empty()) fail(ErrorCode::Config, "template without id");
  if (id == kNoTemplate) fail(ErrorCode::Config, "template id 'none' is reserved");
  if (user.find("{text}") == std::string::npos) {
    fail(ErrorCode::Config, "template '" + id + "': user text lacks the {text} placeholder");
  }
  check_placeholders(id, user);
  if (system) check_placeholders(id, *system);
}

void ModelProfile::validate() const {
  if (name.empty()) fail(ErrorCode::Config, "model profile without name");
  if (endpoint.empty()) fail(ErrorCode::Config, "model '" + name + "': missing endpoint");
  http::parse_url(endpoint);
  if (temperature < 0) fail(ErrorCode::Config, "model '" + name + "': temperature must be >= 0");
  if (max_tokens < 1) fail(ErrorCode::Config, "model '" + name + "': max_tokens must be >= 1");
  if (max_retries < 0) fail(ErrorCode::Config, "model '" + name + "': max_retries must be >= 0");
}

std::string ModelProfile::params_hash() const {
  ordered_json j;
  j["model"] = served_model.empty() ? name : served_model;
  j["temperature"] = temperature;
  j["max_tokens"] = max_tokens;
  return sha256_hex(j.dump()).substr(0, 16);
}

const PromptTemplate* BenchProfiles::find_template(const std::string& id) const {
  if (id == kNoTemplate) return nullptr;
  for (const auto& t : templates) {
    if (t.id == id) return &t;
  }
  fail(ErrorCode::Config, "unknown template id '" + id + "'");
}

std::string BenchProfiles::template_hash(const ModelProfile& m) const {
  const PromptTemplate* t = find_template(m.template_id);
  if (!t) return "none";
  ordered_json j;
  j["kind"] = t->kind == TemplateKind::Chat ? "chat" : "raw";
  j["system"] = t->system ? json(*t->system) : json(nullptr);
  j["user"] = t->user;
  return sha256_hex(j.dump()).substr(0, 16);
}

BenchProfiles parse_profiles(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, std::string("profiles: ") + e.what());
  }
  BenchProfiles out;
  try {
    for (const auto& t : doc.value("templates", json::array())) {
      PromptTemplate pt;
      pt.id = t.at("id").get<std::string>();
      const std::string kind = t.value("kind", "chat");
      if (kind == "chat") {
        pt.kind = TemplateKind::Chat;
      } else if (kind == "raw") {
        pt.kind = TemplateKind::Raw;
      } else {
        fail(ErrorCode::Config, "template '" + pt.id + "': unknown kind '" + kind + "'");
      }
      if (t.contains("system") && !t["system"].is_null()) pt.system = t["system"].get<std::string>();
      pt.user = t.at("user").get<std::string>();
      pt.validate();
      out.templates.push_back(std::move(pt));
    }
    for (const auto& m : doc.at("models")) {
      ModelProfile mp;
      mp.name = m.at("name").get<std::string>();
      mp.size_label = m.value("size_label", "");
      mp.endpoint = m.at("endpoint").get<std::string>();
      mp.template_id = m.value("template", std::string(kNoTemplate));
      mp.served_model = m.value("served_model", mp.name);
      mp.max_tokens = m.value("max_tokens", 512);
      mp.temperature = m.value("temperature", 0.0);
      mp.timeout = std::chrono::milliseconds(m.value("timeout_ms", 60000));
      mp.max_retries = m.value("max_retries", 3);
      mp.retry_base = std::chrono::milliseconds(m.value("retry_base_ms", 1000));
      mp.api_key_env = m.value("api_key_env", "TARJIM_API_KEY");
      mp.validate();
      out.find_template(mp.template_id);
      out.models.push_back(std::move(mp));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Config, std::string("profiles: ") + e.what());
  }
  for (std::size_t i = 0; i < out.models.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (out.models[i].name == out.models[j].name) fail(ErrorCode::Config, "duplicate model name " + out.models[i].name);
    }
  }
  return out;
}

BenchProfiles load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profiles(ss.str());
}

std::string_view language_name(bool arabic) { return arabic ? "Arabic" : "English"; }

namespace {

std::string substitute(const std::string& tmpl, std::string_view src_lang, std::string_view tgt_lang,
                       std::string_view text) {
  std::string out;
  out.reserve(tmpl.size() + text.size());
  std::size_t pos = 0;
  for (auto it = std::sregex_iterator(tmpl.begin(), tmpl.end(), placeholder_re()); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(tmpl, pos, static_cast<std::size_t>(m.position(0)) - pos);
    const std::string name = m[1];
    if (name == "source_language") {
      out += src_lang;
    } else if (name == "target_language") {
      out += tgt_lang;
    } else if (name == "text") {
      out += text;
    } else {
      fail(ErrorCode::Config, "unresolvable placeholder {" + name + "}");
    }
    pos = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  out.append(tmpl, pos, std::string::npos);
  return out;
}

}  // namespace

RenderedPrompt render_prompt(const PromptTemplate* tmpl, Direction direction, const ParallelPair& pair) {
  const bool ar_src = direction == Direction::Ar2En;
  const std::string& source = ar_src ? pair.ar : pair.en;
  RenderedPrompt out;
  if (!tmpl) {
    out.raw = source;
    out.messages.push_back({"user", source});
    return out;
  }
  const auto src_lang = language_name(ar_src);
  const auto tgt_lang = language_name(!ar_src);
  const std::string user = substitute(tmpl->user, src_lang, tgt_lang, source);
  if (tmpl->kind == TemplateKind::Raw) {
    std::string raw = tmpl->system ? substitute(*tmpl->system, src_lang, tgt_lang, source) + "\n" + user : user;
    out.messages.push_back({"user", raw});
    out.raw = std::move(raw);
    return out;
  }
  if (tmpl->system) out.messages.push_back({"system", substitute(*tmpl->system, src_lang, tgt_lang, source)});
  out.messages.push_back({"user", user});
  return out;
}

namespace {

std::string chat_path(const http::Url& url) {
  return url.path.ends_with("/v1") ? "/chat/completions" : "/v1/chat/completions";
}

}  // namespace

TranslateOutcome translate_one(const ModelProfile& profile, const RenderedPrompt& prompt) {
  const http::Url url = http::parse_url(profile.endpoint);
  json body;
  body["model"] = profile.served_model.empty() ? profile.name : profile.served_model;
  body["messages"] = json::array();
  for (const auto& m : prompt.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  body["temperature"] = profile.temperature;
  body["max_tokens"] = profile.max_tokens;

  http::Headers headers;
  if (const char* key = std::getenv(profile.api_key_env.c_str()); key && *key) {
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  http::RetryPolicy policy;
  policy.max_retries = profile.max_retries;
  policy.base_delay = profile.retry_base;

  const auto start = std::chrono::steady_clock::now();
  http::AttemptOutcome outcome;
  try {
    outcome = http::post_with_retries(url, chat_path(url), body.dump(), headers, profile.timeout, policy);
  } catch (const Error& e) {
    throw TranslateError(e.code(), "model '" + profile.name + "': " + e.what(), policy.max_retries + 1);
  }
  const auto stop = std::chrono::steady_clock::now();

  auto terminal = [&](const std::string& why) {
    throw TranslateError(ErrorCode::Protocol, "model '" + profile.name + "': " + why, outcome.attempts);
  };
  if (outcome.response.status != 200) {
    terminal("HTTP " + std::to_string(outcome.response.status) + ": " + outcome.response.body.substr(0, 200));
  }
  json reply;
  try {
    reply = json::parse(outcome.response.body);
  } catch (const json::parse_error&) {
    terminal("malformed completion JSON");
  }
  TranslateOutcome out;
  out.attempts = outcome.attempts;
  out.latency_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  try {
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    out.hypothesis = content.is_null() ? std::string() : text::trim(content.get<std::string>());
  } catch (const json::exception&) {
    terminal("completion lacks choices[0].message.content");
  }
  out.empty = out.hypothesis.empty();
  return out;
}

std::string cache_key(const std::string& model, Direction direction, const std::string& pair_id,
                      const std::string& template_hash, const std::string& params_hash) {
  ordered_json j = json::array({model, composer::to_string(direction), pair_id, template_hash, params_hash});
  return sha256_hex(j.dump());
}

RunCache::RunCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "records", ec);
  if (ec) fail(ErrorCode::Io, "cannot create cache directory " + dir_.string() + ": " + ec.message());
}

namespace {

ordered_json record_json(const RunRecord& r) {
  ordered_json j;
  j["pair_id"] = r.pair_id;
  j["direction"] = composer::to_string(r.direction);
  j["model"] = r.model;
  j["hypothesis"] = r.hypothesis;
  j["latency_ms"] = r.latency_ms;
  j["attempts"] = r.attempts;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    if (!out) fail(ErrorCode::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::Io, "rename to " + path.string() + " failed: " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<RunRecord> RunCache::load(const std::string& key) const {
  const auto path = dir_ / "records" / (key + ".json");
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  json j;
  try {
    j = json::parse(read_file(path));
    RunRecord r;
    r.pair_id = j.at("pair_id").get<std::string>();
    const auto dir = composer::parse_direction(j.at("direction").get<std::string>());
    if (!dir) return std::nullopt;
    r.direction = *dir;
    r.model = j.at("model").get<std::string>();
    r.hypothesis = j.at("hypothesis").get<std::string>();
    r.latency_ms = j.at("latency_ms").get<double>();
    r.attempts = j.at("attempts").get<int>();
    r.cache_hit = true;
    return r;
  } catch (const json::exception&) {
    return std::nullopt;  // unreadable entries are re-requested
  }
}

void RunCache::store(const std::string& key, const RunRecord& record) const {
  write_atomic(dir_ / "records" / (key + ".json"), record_json(record).dump(2) + "\n");
}

void write_manifest(const RunManifest& m, const std::filesystem::path& cache_dir) {
  ordered_json j;
  j["benchmark_pairs"] = m.benchmark_pairs;
  j["directions"] = json::array();
  for (auto d : m.directions) j["directions"].push_back(composer::to_string(d));
  j["models"] = json::array();
  for (const auto& info : m.models) {
    ordered_json mj;
    mj["name"] = info.name;
    mj["size_label"] = info.size_label;
    mj["template_id"] = info.template_id;
    mj["template_hash"] = info.template_hash;
    mj["params_hash"] = info.params_hash;
    mj["served_model"] = info.served_model;
    mj["temperature"] = info.temperature;
    mj["max_tokens"] = info.max_tokens;
    j["models"].push_back(mj);
  }
  std::filesystem::create_directories(cache_dir);
  write_atomic(cache_dir / "run.json", j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& cache_dir) {
  RunManifest m;
  try {
    const json j = json::parse(read_file(cache_dir / "run.json"));
    m.benchmark_pairs = j.at("benchmark_pairs").get<std::size_t>();
    for (const auto& d : j.at("directions")) {
      const auto dir = composer::parse_direction(d.get<std::string>());
      if (!dir) fail(ErrorCode::Data, "run.json: bad direction");
      m.directions.push_back(*dir);
    }
    for (const auto& mj : j.at("models")) {
      RunModelInfo info;
      info.name = mj.at("name").get<std::string>();
      info.size_label = mj.at("size_label").get<std::string>();
      info.template_id = mj.at("template_id").get<std::string>();
      info.template_hash = mj.at("template_hash").get<std::string>();
      info.params_hash = mj.at("params_hash").get<std::string>();
      info.served_model = mj.at("served_model").get<std::string>();
      info.temperature = mj.at("temperature").get<double>();
      info.max_tokens = mj.at("max_tokens").get<int>();
      m.models.push_back(std::move(info));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Data, std::string("run.json: ") + e.what());
  }
  return m;
}

RunSummary run_benchmark(const BenchProfiles& profiles, std::span<const BenchmarkEntry> entries,
                         std::span<const Direction> directions, const std::filesystem::path& cache_dir,
                         std::size_t concurrency) {
  if (directions.empty()) fail(ErrorCode::Config, "no directions requested");
  RunCache cache(cache_dir);

  struct Task {
    const ModelProfile* profile;
    const PromptTemplate* tmpl;
    Direction direction;
    const BenchmarkEntry* entry;
    std::string key;
  };
  RunSummary summary;
  summary.manifest.directions.assign(directions.begin(), directions.end());
  summary.manifest.benchmark_pairs = entries.size();
  std::vector<Task> tasks;
  for (const auto& m : profiles.models) {
    const auto thash = profiles.template_hash(m);
    const auto phash = m.params_hash();
    summary.manifest.models.push_back({m.name, m.size_label, m.template_id, thash, phash,
                                       m.served_model.empty() ? m.name : m.served_model, m.temperature,
                                       m.max_tokens});
    const PromptTemplate* tmpl = profiles.find_template(m.template_id);
    for (auto d : directions) {
      for (const auto& e : entries) {
        tasks.push_back({&m, tmpl, d, &e, cache_key(m.name, d, e.pair.id, thash, phash)});
      }
    }
  }
  write_manifest(summary.manifest, cache_dir);

  summary.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> requests{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      if (auto hit = cache.load(t.key)) {
        summary.records[i] = std::move(*hit);
        continue;
      }
      RunRecord r;
      r.pair_id = t.entry->pair.id;
      r.direction = t.direction;
      r.model = t.profile->name;
      try {
        auto out = translate_one(*t.profile, render_prompt(t.tmpl, t.direction, t.entry->pair));
        requests += static_cast<std::size_t>(out.attempts);
        r.hypothesis = std::move(out.hypothesis);
        r.latency_ms = out.latency_ms;
        r.attempts = out.attempts;
        cache.store(t.key, r);
      } catch (const TranslateError& e) {
        r.error = e.what();
        r.attempts = e.attempts();
        requests += static_cast<std::size_t>(e.attempts());
      } catch (const Error& e) {
        r.error = e.what();
      }
      summary.records[i] = std::move(r);
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(concurrency, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  summary.requests = requests.load();
  for (const auto& r : summary.records) {
    if (r.cache_hit) ++summary.cache_hits;
    if (r.error) ++summary.failures;
  }
  return summary;
}

std::vector<Direction> parse_directions(const std::string& csv) {
  std::vector<Direction> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto d = composer::parse_direction(item);
    if (!d) fail(ErrorCode::Config, "unknown direction '" + item + "' (expected ar2en or en2ar)");
    if (std::find(out.begin(), out.end(), *d) == out.end()) out.push_back(*d);
  }
  if (out.empty()) fail(ErrorCode::Config, "no directions given");
  return out;
}

}  // namespace tarjim::bench
