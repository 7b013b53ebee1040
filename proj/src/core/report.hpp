#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/benchrunner.hpp"
#include "core/comet_client.hpp"
#include "core/metrics.hpp"

namespace tarjim::bench {

// Parses "1.5B", "350M", "9b"; unparseable labels yield nullopt.
std::optional<double> parse_size_label(const std::string& label);

struct CellScores {
  metrics::BleuScore bleu;
  metrics::ChrfScore chrf;
  std::optional<metrics::CometResult> comet;
  std::size_t covered = 0;
  std::size_t total = 0;
  std::vector<std::string> missing_ids;  // holes, scored as empty hypotheses
};

struct ModelReport {
  RunModelInfo info;
  std::map<Direction, CellScores> cells;
  std::size_t missing_total() const;
};

struct EvalReport {
  std::vector<ModelReport> models;  // ascending by size label, unparseable last
  std::vector<Direction> directions;
  std::string metric_fingerprint;
  std::optional<std::string> comet_model_id;

  std::string markdown() const;
  std::string csv() const;
  std::string json() const;
};

// Looks up the record of every (model, direction, pair) through `cache`;
// absent or failed records become holes.
EvalReport score_and_report(const RunManifest& manifest, const RunCache& cache,
                            std::span<const BenchmarkEntry> entries, const metrics::MetricConfig& cfg,
                            const std::optional<metrics::CometClientConfig>& comet = std::nullopt);

// Same, from an in-memory record set.
EvalReport score_records(const RunManifest& manifest, std::span<const RunRecord> records,
                         std::span<const BenchmarkEntry> entries, const metrics::MetricConfig& cfg,
                         const std::optional<metrics::CometClientConfig>& comet = std::nullopt);

// Writes report.md, report.csv and report.json into `out_dir`.
void write_report(const EvalReport& report, const std::filesystem::path& out_dir);

}  // namespace tarjim::bench
