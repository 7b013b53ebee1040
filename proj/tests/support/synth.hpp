#pragma once

// Synthetic corpora for tests. Words are pseudo-words built from syllables,
// so vocabularies are large and chance n-gram collisions do not happen.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "core/corpus_io.hpp"

namespace synth {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(g_); }
  bool chance(double p) { return real() < p; }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

// Alphabet variants let tests build corpora that share no word at all.
enum class Alphabet { Primary, Disjoint };

std::string en_word(Rng& rng, Alphabet a = Alphabet::Primary);
std::string ar_word(Rng& rng, Alphabet a = Alphabet::Primary);
std::string en_sentence(Rng& rng, int words, Alphabet a = Alphabet::Primary);
std::string ar_sentence(Rng& rng, int words, Alphabet a = Alphabet::Primary);

// Same word count on both sides; passes every default filter when words >= 3.
tarjim::ParallelPair pair(Rng& rng, const std::string& id, int words, Alphabet a = Alphabet::Primary);

std::vector<tarjim::ParallelPair> corpus(Rng& rng, std::size_t count, int min_words, int max_words,
                                         const std::string& id_prefix = "p", Alphabet a = Alphabet::Primary);

// Entries whose origin side has a word count in [min_words, max_words].
std::vector<tarjim::BenchmarkEntry> benchmark(Rng& rng, std::size_t ar_origin, std::size_t en_origin,
                                              int min_words, int max_words);

// Inserts words [from, from + n) of `source`'s side into the same side of
// `target`, after its first word.
void plant(tarjim::ParallelPair& target, const tarjim::ParallelPair& source, tarjim::Origin side,
           std::size_t from, std::size_t n);

std::vector<std::string> split(const std::string& s);
std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t count);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

std::string read_file(const std::filesystem::path& p);

}  // namespace synth
