#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/composer.hpp"
#include "core/corpus_io.hpp"
#include "core/error.hpp"

namespace tarjim::bench {

using composer::Direction;

enum class TemplateKind { Chat, Raw };

struct PromptTemplate {
  std::string id;
  TemplateKind kind = TemplateKind::Chat;
  std::optional<std::string> system;
  std::string user;

  // Throws Error(Config) when {text} is missing or an unknown placeholder appears.
  void validate() const;
};

// Template id used by translation-native systems that take the bare source.
inline constexpr std::string_view kNoTemplate = "none";

struct ModelProfile {
  std::string name;
  std::string size_label;
  std::string endpoint;
  std::string template_id = std::string(kNoTemplate);
  std::string served_model;  // "model" field sent to the endpoint; defaults to name
  int max_tokens = 512;
  double temperature = 0.0;
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  std::chrono::milliseconds retry_base{1000};
  std::string api_key_env = "TARJIM_API_KEY";

  void validate() const;
  std::string params_hash() const;
};

struct BenchProfiles {
  std::vector<PromptTemplate> templates;
  std::vector<ModelProfile> models;

  const PromptTemplate* find_template(const std::string& id) const;  // nullptr for "none"
  std::string template_hash(const ModelProfile& m) const;
};

// Parses the profiles/templates JSON document; throws Error(Config).
BenchProfiles parse_profiles(const std::string& json_text);
BenchProfiles load_profiles(const std::filesystem::path& path);

std::string_view language_name(bool arabic);

struct ChatMessage {
  std::string role;
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

struct RenderedPrompt {
  std::vector<ChatMessage> messages;
  // The single rendered string for raw templates and the bare-source case.
  std::optional<std::string> raw;
};

// `tmpl == nullptr` means the "none" template.
RenderedPrompt render_prompt(const PromptTemplate* tmpl, Direction direction, const ParallelPair& pair);

struct TranslateOutcome {
  std::string hypothesis;
  int attempts = 0;
  double latency_ms = 0.0;
  bool empty = false;
};

class TranslateError : public Error {
 public:
  TranslateError(ErrorCode code, const std::string& what, int attempts) : Error(code, what), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

// OpenAI-compatible chat completion: POST <endpoint>/v1/chat/completions.
// 5xx and transport errors are retried; 4xx is terminal (Error(Protocol)).
TranslateOutcome translate_one(const ModelProfile& profile, const RenderedPrompt& prompt);

struct RunRecord {
  std::string pair_id;
  Direction direction = Direction::Ar2En;
  std::string model;
  std::string hypothesis;
  double latency_ms = 0.0;
  int attempts = 0;
  bool cache_hit = false;
  std::optional<std::string> error;
};

std::string cache_key(const std::string& model, Direction direction, const std::string& pair_id,
                      const std::string& template_hash, const std::string& params_hash);

// Content-addressed record store: one JSON file per record under
// <dir>/records/, written atomically via rename.
class RunCache {
 public:
  explicit RunCache(std::filesystem::path dir);
  std::optional<RunRecord> load(const std::string& key) const;
  void store(const std::string& key, const RunRecord& record) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Per-model facts the report needs, persisted as <cache>/run.json.
struct RunModelInfo {
  std::string name;
  std::string size_label;
  std::string template_id;
  std::string template_hash;
  std::string params_hash;
  std::string served_model;
  double temperature = 0.0;
  int max_tokens = 0;
};

struct RunManifest {
  std::vector<RunModelInfo> models;
  std::vector<Direction> directions;
  std::size_t benchmark_pairs = 0;
};

void write_manifest(const RunManifest& m, const std::filesystem::path& cache_dir);
RunManifest read_manifest(const std::filesystem::path& cache_dir);

struct RunSummary {
  std::vector<RunRecord> records;  // model-major, then direction, then benchmark order
  std::size_t requests = 0;        // HTTP attempts issued
  std::size_t cache_hits = 0;
  std::size_t failures = 0;
  RunManifest manifest;
};

RunSummary run_benchmark(const BenchProfiles& profiles, std::span<const BenchmarkEntry> entries,
                         std::span<const Direction> directions, const std::filesystem::path& cache_dir,
                         std::size_t concurrency = 8);

std::vector<Direction> parse_directions(const std::string& csv);

}  // namespace tarjim::bench
