#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

namespace tarjim {

enum class Origin { Arabic, English };
enum class Split { Dev, Test };
enum class Format { Jsonl, Tsv };

std::string_view to_string(Origin o);
std::optional<Origin> parse_origin(std::string_view s);
std::string_view to_string(Split s);
Format parse_format(std::string_view s);

struct ParallelPair {
  std::string id;
  std::string ar;
  std::string en;
  Origin origin = Origin::Arabic;
  std::optional<std::string> domain;
  std::map<std::string, std::string> meta;

  bool operator==(const ParallelPair&) const = default;
};

struct BenchmarkEntry {
  ParallelPair pair;
  Split split = Split::Test;

  bool operator==(const BenchmarkEntry&) const = default;
};

// A malformed record. `reason` is one of: malformed_json, missing_field,
// invalid_origin, invalid_split, empty_text, embedded_newline, invalid_utf8,
// bad_column_count, duplicate_id.
struct ReadError {
  std::size_t line = 0;
  std::string reason;
  std::string detail;

  std::string message() const;
};

using ReadItem = std::variant<BenchmarkEntry, ReadError>;

// Lazy, line-at-a-time reader. Records come back in file order; duplicate ids
// are reported after the last record, one error per repeated occurrence.
class PairReader {
 public:
  PairReader(const std::filesystem::path& path, Format format);

  std::optional<ReadItem> next();
  std::size_t lines_read() const { return line_no_; }

 private:
  ReadItem parse_line(const std::string& line);

  std::ifstream in_;
  Format format_;
  std::size_t line_no_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<ReadError> duplicates_;
  std::size_t dup_cursor_ = 0;
  bool eof_ = false;
};

// Reads the whole file; throws Error(Data) carrying the first error's line.
std::vector<ParallelPair> read_pairs(const std::filesystem::path& path, Format format);
std::vector<BenchmarkEntry> read_benchmark(const std::filesystem::path& path,
                                           Format format = Format::Jsonl);

// Serializes one record. Throws Error(Data) on embedded newlines, invalid
// UTF-8, or (TSV) a record carrying meta.
std::string encode_pair(const ParallelPair& pair, Format format);
std::string encode_entry(const BenchmarkEntry& entry);

class PairWriter {
 public:
  PairWriter(const std::filesystem::path& path, Format format);
  void write(const ParallelPair& pair);
  void close();
  std::size_t count() const { return count_; }

 private:
  std::ofstream out_;
  Format format_;
  std::size_t count_ = 0;
};

std::size_t write_pairs(std::span<const ParallelPair> pairs,
                        const std::filesystem::path& path, Format format);
std::size_t write_benchmark(std::span<const BenchmarkEntry> entries,
                            const std::filesystem::path& path);

// Whitespace-token length buckets: 1-2, 3-10, 11-30, 31-50, 51-100, 101+.
// Zero-token sides cannot occur for valid records.
inline constexpr std::array<std::string_view, 6> kLengthBuckets = {
    "1-2", "3-10", "11-30", "31-50", "51-100", "101+"};
std::size_t length_bucket(std::size_t tokens);

struct ManifestStats {
  std::uint64_t pair_count = 0;
  std::uint64_t ar_tokens = 0;
  std::uint64_t en_tokens = 0;
  std::array<std::uint64_t, 6> ar_histogram{};
  std::array<std::uint64_t, 6> en_histogram{};
  std::uint64_t origin_ar = 0;
  std::uint64_t origin_en = 0;
  std::map<std::string, std::uint64_t> domains;

  void add(const ParallelPair& pair);
  bool operator==(const ManifestStats&) const = default;
};

ManifestStats manifest(std::span<const ParallelPair> pairs);

}  // namespace tarjim
