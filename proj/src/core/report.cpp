#include "core/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "core/error.hpp"

namespace tarjim::bench {

using nlohmann::ordered_json;

std::optional<double> parse_size_label(const std::string& label) {
  std::size_t i = 0;
  while (i < label.size() && (std::isdigit(static_cast<unsigned char>(label[i])) || label[i] == '.')) ++i;
  if (i == 0 || i + 1 != label.size()) return std::nullopt;
  double value;
  try {
    std::size_t used = 0;
    value = std::stod(label.substr(0, i), &used);
    if (used != i) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  switch (label[i]) {
    case 'B': case 'b': return value * 1e9;
    case 'M': case 'm': return value * 1e6;
    default: return std::nullopt;
  }
}

std::size_t ModelReport::missing_total() const {
  std::size_t n = 0;
  for (const auto& [d, c] : cells) n += c.missing_ids.size();
  return n;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string direction_title(Direction d) { return d == Direction::Ar2En ? "AR→EN" : "EN→AR"; }

bool report_has_comet(const EvalReport& r) { return r.comet_model_id.has_value(); }

std::string coverage_note(const ModelReport& m, Direction d, const CellScores& c) {
  return m.info.name + " (" + std::string(composer::to_string(d)) + "): coverage " + std::to_string(c.covered) +
         "/" + std::to_string(c.total);
}

}  // namespace

EvalReport score_records(const RunManifest& manifest, std::span<const RunRecord> records,
                         std::span<const BenchmarkEntry> entries, const metrics::MetricConfig& cfg,
                         const std::optional<metrics::CometClientConfig>& comet) {
  if (entries.empty()) fail(ErrorCode::InvalidArgument, "benchmark is empty");
  std::map<std::tuple<std::string, Direction, std::string>, const RunRecord*> index;
  for (const auto& r : records) {
    if (!r.error) index[{r.model, r.direction, r.pair_id}] = &r;
  }

  EvalReport report;
  report.directions = manifest.directions;
  report.metric_fingerprint = cfg.fingerprint();
  std::optional<metrics::CometClient> client;
  if (comet) client.emplace(*comet);

  for (const auto& info : manifest.models) {
    ModelReport mr;
    mr.info = info;
    for (auto d : manifest.directions) {
      CellScores cell;
      cell.total = entries.size();
      std::vector<std::string> hyps, refs, srcs;
      std::vector<bool> present;
      for (const auto& e : entries) {
        const bool ar_src = d == Direction::Ar2En;
        refs.push_back(ar_src ? e.pair.en : e.pair.ar);
        srcs.push_back(ar_src ? e.pair.ar : e.pair.en);
        auto it = index.find({info.name, d, e.pair.id});
        if (it == index.end()) {
          hyps.emplace_back();
          cell.missing_ids.push_back(e.pair.id);
          present.push_back(false);
        } else {
          hyps.push_back(it->second->hypothesis);
          ++cell.covered;
          present.push_back(true);
        }
      }
      cell.bleu = metrics::corpus_bleu(hyps, refs, cfg);
      cell.chrf = metrics::corpus_chrf_pp(hyps, refs, cfg);
      if (client) {
        // Holes and empty hypotheses cannot be sent; they score 0.
        std::vector<metrics::CometTriple> triples;
        std::vector<std::size_t> where;
        for (std::size_t i = 0; i < hyps.size(); ++i) {
          if (present[i] && !hyps[i].empty()) {
            triples.push_back({srcs[i], hyps[i], refs[i]});
            where.push_back(i);
          }
        }
        metrics::CometResult full;
        full.segments.assign(hyps.size(), 0.0);
        full.raw_segments.assign(hyps.size(), 0.0);
        if (!triples.empty()) {
          auto scored = client->score(triples);
          for (std::size_t k = 0; k < where.size(); ++k) {
            full.segments[where[k]] = scored.segments[k];
            full.raw_segments[where[k]] = scored.raw_segments[k];
          }
          full.model_id = scored.model_id;
          full.requests = scored.requests;
        }
        double sum = 0.0;
        for (double v : full.segments) sum += v;
        full.system = sum / static_cast<double>(full.segments.size());
        if (!report.comet_model_id || report.comet_model_id->empty()) report.comet_model_id = full.model_id;
        cell.comet = std::move(full);
      }
      mr.cells.emplace(d, std::move(cell));
    }
    report.models.push_back(std::move(mr));
  }

  std::stable_sort(report.models.begin(), report.models.end(), [](const ModelReport& a, const ModelReport& b) {
    const auto sa = parse_size_label(a.info.size_label);
    const auto sb = parse_size_label(b.info.size_label);
    if (sa && sb) return *sa < *sb || (*sa == *sb && a.info.name < b.info.name);
    if (sa != sb) return sa.has_value();
    return a.info.name < b.info.name;
  });
  return report;
}

EvalReport score_and_report(const RunManifest& manifest, const RunCache& cache,
                            std::span<const BenchmarkEntry> entries, const metrics::MetricConfig& cfg,
                            const std::optional<metrics::CometClientConfig>& comet) {
  std::vector<RunRecord> records;
  for (const auto& m : manifest.models) {
    for (auto d : manifest.directions) {
      for (const auto& e : entries) {
        if (auto r = cache.load(cache_key(m.name, d, e.pair.id, m.template_hash, m.params_hash))) {
          records.push_back(std::move(*r));
        }
      }
    }
  }
  return score_records(manifest, records, entries, cfg, comet);
}

std::string EvalReport::markdown() const {
  const bool comet = report_has_comet(*this);
  std::ostringstream md;
  md << "# Translation benchmark report\n\n";
  md << "Metrics: `" << metric_fingerprint << "`\n";
  if (comet) md << "COMET checkpoint: `" << *comet_model_id << "`\n";
  md << "\n| Model | Size |";
  std::string rule = "|---|---|";
  for (auto d : directions) {
    const auto t = direction_title(d);
    if (comet) {
      md << ' ' << t << " COMET |";
      rule += "---:|";
    }
    md << ' ' << t << " chrF++ | " << t << " BLEU |";
    rule += "---:|---:|";
  }
  md << '\n' << rule << '\n';
  for (const auto& m : models) {
    md << "| " << m.info.name << (m.missing_total() ? " †" : "") << " | " << m.info.size_label << " |";
    for (auto d : directions) {
      const auto& c = m.cells.at(d);
      if (comet) md << ' ' << (c.comet ? fixed2(c.comet->system) : "") << " |";
      md << ' ' << fixed2(c.chrf.score) << " | " << fixed2(c.bleu.score) << " |";
    }
    md << '\n';
  }
  std::vector<std::string> notes;
  for (const auto& m : models) {
    for (auto d : directions) {
      const auto& c = m.cells.at(d);
      if (!c.missing_ids.empty()) notes.push_back(coverage_note(m, d, c));
    }
  }
  md << '\n';
  if (notes.empty()) {
    const std::size_t n = models.empty() || directions.empty() ? 0 : models.front().cells.at(directions.front()).total;
    md << "All cells cover the full benchmark (" << n << " pairs).\n";
  } else {
    md << "† Missing hypotheses are scored as empty output:\n\n";
    for (const auto& n : notes) md << "- " << n << '\n';
  }
  return md.str();
}

std::string EvalReport::csv() const {
  const bool comet = report_has_comet(*this);
  std::ostringstream out;
  out << "model,size";
  for (auto d : directions) {
    const auto p = std::string(composer::to_string(d));
    if (comet) out << ',' << p << "_comet";
    out << ',' << p << "_chrf_pp," << p << "_bleu," << p << "_coverage";
  }
  out << '\n';
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& m : models) {
    out << quote(m.info.name) << ',' << quote(m.info.size_label);
    for (auto d : directions) {
      const auto& c = m.cells.at(d);
      if (comet) out << ',' << (c.comet ? fixed2(c.comet->system) : "");
      out << ',' << fixed2(c.chrf.score) << ',' << fixed2(c.bleu.score) << ',' << c.covered << '/' << c.total;
    }
    out << '\n';
  }
  return out.str();
}

std::string EvalReport::json() const {
  ordered_json j;
  j["metric_config"] = metric_fingerprint;
  if (comet_model_id) j["comet_model_id"] = *comet_model_id;
  j["directions"] = ordered_json::array();
  for (auto d : directions) j["directions"].push_back(composer::to_string(d));
  j["models"] = ordered_json::array();
  for (const auto& m : models) {
    ordered_json mj;
    mj["name"] = m.info.name;
    mj["size_label"] = m.info.size_label;
    mj["template_id"] = m.info.template_id;
    mj["template_hash"] = m.info.template_hash;
    mj["params_hash"] = m.info.params_hash;
    mj["served_model"] = m.info.served_model;
    mj["temperature"] = m.info.temperature;
    mj["max_tokens"] = m.info.max_tokens;
    ordered_json cells;
    for (auto d : directions) {
      const auto& c = m.cells.at(d);
      ordered_json cj;
      ordered_json bleu;
      bleu["score"] = c.bleu.score;
      bleu["precisions"] = c.bleu.precisions;
      bleu["brevity_penalty"] = c.bleu.brevity_penalty;
      bleu["hyp_len"] = c.bleu.hyp_len;
      bleu["ref_len"] = c.bleu.ref_len;
      cj["bleu"] = bleu;
      cj["chrf_pp"] = {{"score", c.chrf.score},
                       {"avg_precision", c.chrf.avg_precision},
                       {"avg_recall", c.chrf.avg_recall}};
      if (c.comet) {
        cj["comet"] = {{"system", c.comet->system},
                       {"segments", c.comet->segments},
                       {"raw_segments", c.comet->raw_segments},
                       {"model_id", c.comet->model_id}};
      }
      cj["coverage"] = {{"covered", c.covered}, {"total", c.total}};
      cj["missing_ids"] = c.missing_ids;
      cells[std::string(composer::to_string(d))] = cj;
    }
    mj["cells"] = cells;
    j["models"].push_back(mj);
  }
  return j.dump(2) + "\n";
}

void write_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write " + (out_dir / name).string());
    out << content;
  };
  write("report.md", report.markdown());
  write("report.csv", report.csv());
  write("report.json", report.json());
}

}  // namespace tarjim::bench
