#pragma once

// Brute-force reference implementations used to check the optimized code.

#include <cstddef>
#include <string>
#include <vector>

#include "core/corpus_io.hpp"

namespace oracle {

// Letter-script fraction from a hand-decoded UTF-8 scan and literal
// codepoint ranges; -1 when there are no letters.
double script_fraction(const std::string& s, bool arabic);

struct Hit {
  std::string benchmark_id;
  std::string corpus_id;
  tarjim::Origin side;
  std::string ngram;  // space-joined
  std::size_t corpus_pos;
  std::size_t shared;

  bool operator<(const Hit& o) const;
  bool operator==(const Hit& o) const = default;
};

// Compares every corpus window with every benchmark window as strings.
// Words are whitespace-split; English is ASCII-lowercased. Only valid for
// text that NFC normalization leaves unchanged.
std::vector<Hit> contamination(const std::vector<tarjim::ParallelPair>& corpus,
                               const std::vector<tarjim::BenchmarkEntry>& entries, std::size_t n);

}  // namespace oracle
