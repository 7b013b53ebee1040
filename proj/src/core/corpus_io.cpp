#include "core/corpus_io.hpp"

#include <json.hpp>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tarjim {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Origin o) { return o == Origin::Arabic ? "ar" : "en"; }

std::optional<Origin> parse_origin(std::string_view s) {
  if (s == "ar") return Origin::Arabic;
  if (s == "en") return Origin::English;
  return std::nullopt;
}

std::string_view to_string(Split s) { return s == Split::Dev ? "dev" : "test"; }

Format parse_format(std::string_view s) {
  if (s == "jsonl") return Format::Jsonl;
  if (s == "tsv") return Format::Tsv;
  fail(ErrorCode::Config, "unknown corpus format '" + std::string(s) + "' (expected jsonl or tsv)");
}

std::string ReadError::message() const {
  std::string m = "line " + std::to_string(line) + ": " + reason;
  if (!detail.empty()) m += " (" + detail + ")";
  return m;
}

namespace {

bool has_newline(std::string_view s) {
  return s.find('\n') != std::string_view::npos || s.find('\r') != std::string_view::npos;
}

std::optional<ReadError> check_text(std::size_t line, std::string_view field,
                                    std::string_view value) {
  if (!text::is_valid_utf8(value)) return ReadError{line, "invalid_utf8", std::string(field)};
  if (has_newline(value)) return ReadError{line, "embedded_newline", std::string(field)};
  if (text::trim(value).empty()) return ReadError{line, "empty_text", std::string(field)};
  return std::nullopt;
}

std::string tsv_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      const char n = s[i + 1];
      if (n == 't') { out.push_back('\t'); ++i; continue; }
      if (n == 'n') { out.push_back('\n'); ++i; continue; }
      if (n == '\\') { out.push_back('\\'); ++i; continue; }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

ReadItem parse_jsonl(std::size_t line_no, const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    return ReadError{line_no, "malformed_json", e.what()};
  }
  if (!j.is_object()) return ReadError{line_no, "malformed_json", "record is not an object"};

  BenchmarkEntry entry;
  ParallelPair& p = entry.pair;
  for (const char* key : {"id", "ar", "en", "origin"}) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return ReadError{line_no, "missing_field", key};
    if (!it->is_string()) return ReadError{line_no, "missing_field", std::string(key) + " is not a string"};
  }
  p.id = j["id"].get<std::string>();
  p.ar = j["ar"].get<std::string>();
  p.en = j["en"].get<std::string>();
  if (p.id.empty()) return ReadError{line_no, "missing_field", "id is empty"};
  const auto origin = parse_origin(j["origin"].get<std::string>());
  if (!origin) return ReadError{line_no, "invalid_origin", j["origin"].get<std::string>()};
  p.origin = *origin;

  if (auto it = j.find("domain"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) return ReadError{line_no, "missing_field", "domain is not a string"};
    p.domain = it->get<std::string>();
  }
  if (auto it = j.find("meta"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) return ReadError{line_no, "missing_field", "meta is not an object"};
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) return ReadError{line_no, "missing_field", "meta." + k + " is not a string"};
      p.meta.emplace(k, v.get<std::string>());
    }
  }
  if (auto it = j.find("split"); it != j.end() && !it->is_null()) {
    const std::string s = it->is_string() ? it->get<std::string>() : std::string();
    if (s == "dev") {
      entry.split = Split::Dev;
    } else if (s == "test") {
      entry.split = Split::Test;
    } else {
      return ReadError{line_no, "invalid_split", s};
    }
  }
  if (auto e = check_text(line_no, "ar", p.ar)) return *e;
  if (auto e = check_text(line_no, "en", p.en)) return *e;
  return entry;
}

ReadItem parse_tsv(std::size_t line_no, const std::string& line) {
  if (!text::is_valid_utf8(line)) return ReadError{line_no, "invalid_utf8", ""};
  const auto cols = split_tabs(line);
  if (cols.size() < 4 || cols.size() > 5) {
    return ReadError{line_no, "bad_column_count", std::to_string(cols.size()) + " columns"};
  }
  BenchmarkEntry entry;
  ParallelPair& p = entry.pair;
  p.id = tsv_unescape(cols[0]);
  p.ar = tsv_unescape(cols[1]);
  p.en = tsv_unescape(cols[2]);
  if (p.id.empty()) return ReadError{line_no, "missing_field", "id"};
  const auto origin = parse_origin(cols[3]);
  if (!origin) return ReadError{line_no, "invalid_origin", std::string(cols[3])};
  p.origin = *origin;
  if (cols.size() == 5) p.domain = tsv_unescape(cols[4]);
  if (auto e = check_text(line_no, "ar", p.ar)) return *e;
  if (auto e = check_text(line_no, "en", p.en)) return *e;
  return entry;
}

}  // namespace

PairReader::PairReader(const std::filesystem::path& path, Format format)
    : in_(path, std::ios::binary), format_(format) {
  if (!in_) fail(ErrorCode::Io, "cannot open " + path.string());
}

std::optional<ReadItem> PairReader::next() {
  std::string line;
  while (!eof_) {
    if (!std::getline(in_, line)) {
      eof_ = true;
      break;
    }
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no_ == 1 && line.starts_with("\xEF\xBB\xBF")) {
      return ReadError{line_no_, "invalid_utf8", "byte order mark"};
    }
    if (line.empty()) continue;
    ReadItem item = format_ == Format::Jsonl ? parse_jsonl(line_no_, line) : parse_tsv(line_no_, line);
    if (auto* entry = std::get_if<BenchmarkEntry>(&item)) {
      if (!seen_ids_.insert(entry->pair.id).second) {
        duplicates_.push_back({line_no_, "duplicate_id", entry->pair.id});
      }
    }
    return item;
  }
  if (dup_cursor_ < duplicates_.size()) return duplicates_[dup_cursor_++];
  return std::nullopt;
}

namespace {

template <typename Fn>
void read_all(const std::filesystem::path& path, Format format, Fn&& sink) {
  PairReader reader(path, format);
  while (auto item = reader.next()) {
    if (auto* err = std::get_if<ReadError>(&*item)) {
      fail(ErrorCode::Data, path.string() + ": " + err->message());
    }
    sink(std::get<BenchmarkEntry>(std::move(*item)));
  }
}

}  // namespace

std::vector<ParallelPair> read_pairs(const std::filesystem::path& path, Format format) {
  std::vector<ParallelPair> out;
  read_all(path, format, [&](BenchmarkEntry&& e) { out.push_back(std::move(e.pair)); });
  return out;
}

std::vector<BenchmarkEntry> read_benchmark(const std::filesystem::path& path, Format format) {
  std::vector<BenchmarkEntry> out;
  read_all(path, format, [&](BenchmarkEntry&& e) { out.push_back(std::move(e)); });
  return out;
}

namespace {

void check_writable(const ParallelPair& p) {
  if (p.id.empty()) fail(ErrorCode::Data, "pair with empty id");
  auto check = [&](std::string_view field, std::string_view v) {
    if (has_newline(v)) fail(ErrorCode::Data, "pair " + p.id + ": newline inside " + std::string(field));
    if (!text::is_valid_utf8(v)) fail(ErrorCode::Data, "pair " + p.id + ": invalid UTF-8 in " + std::string(field));
  };
  check("id", p.id);
  check("ar", p.ar);
  check("en", p.en);
  if (p.domain) check("domain", *p.domain);
  for (const auto& [k, v] : p.meta) {
    check("meta key", k);
    check("meta." + k, v);
  }
}

ordered_json pair_json(const ParallelPair& p) {
  ordered_json j;
  j["id"] = p.id;
  j["ar"] = p.ar;
  j["en"] = p.en;
  j["origin"] = to_string(p.origin);
  if (p.domain) j["domain"] = *p.domain;
  if (!p.meta.empty()) j["meta"] = p.meta;
  return j;
}

}  // namespace

std::string encode_pair(const ParallelPair& p, Format format) {
  check_writable(p);
  if (format == Format::Jsonl) return pair_json(p).dump();
  if (!p.meta.empty()) fail(ErrorCode::Data, "pair " + p.id + ": meta cannot be encoded as TSV");
  std::string line = tsv_escape(p.id) + '\t' + tsv_escape(p.ar) + '\t' + tsv_escape(p.en) + '\t' +
                     std::string(to_string(p.origin));
  if (p.domain) line += '\t' + tsv_escape(*p.domain);
  return line;
}

std::string encode_entry(const BenchmarkEntry& e) {
  check_writable(e.pair);
  ordered_json j = pair_json(e.pair);
  j["split"] = to_string(e.split);
  return j.dump();
}

PairWriter::PairWriter(const std::filesystem::path& path, Format format)
    : out_(path, std::ios::binary | std::ios::trunc), format_(format) {
  if (!out_) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
}

void PairWriter::write(const ParallelPair& pair) {
  out_ << encode_pair(pair, format_) << '\n';
  if (!out_) fail(ErrorCode::Io, "write failed");
  ++count_;
}

void PairWriter::close() {
  out_.close();
  if (out_.fail()) fail(ErrorCode::Io, "closing output failed");
}

std::size_t write_pairs(std::span<const ParallelPair> pairs, const std::filesystem::path& path,
                        Format format) {
  PairWriter w(path, format);
  for (const auto& p : pairs) w.write(p);
  w.close();
  return w.count();
}

std::size_t write_benchmark(std::span<const BenchmarkEntry> entries,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  for (const auto& e : entries) out << encode_entry(e) << '\n';
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
  return entries.size();
}

std::size_t length_bucket(std::size_t tokens) {
  if (tokens <= 2) return 0;
  if (tokens <= 10) return 1;
  if (tokens <= 30) return 2;
  if (tokens <= 50) return 3;
  if (tokens <= 100) return 4;
  return 5;
}

void ManifestStats::add(const ParallelPair& p) {
  ++pair_count;
  const auto a = text::word_count(p.ar);
  const auto e = text::word_count(p.en);
  ar_tokens += a;
  en_tokens += e;
  ++ar_histogram[length_bucket(a)];
  ++en_histogram[length_bucket(e)];
  (p.origin == Origin::Arabic ? origin_ar : origin_en) += 1;
  ++domains[p.domain.value_or("unlabeled")];
}

ManifestStats manifest(std::span<const ParallelPair> pairs) {
  ManifestStats stats;
  for (const auto& p : pairs) stats.add(p);
  return stats;
}

}  // namespace tarjim
