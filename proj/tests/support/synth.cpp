#include "synth.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace synth {

namespace {

const std::vector<std::string> kEnOnset = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v"};
const std::vector<std::string> kEnOnsetAlt = {"c", "h", "j", "q", "w", "x", "y", "z"};
const std::vector<std::string> kEnVowel = {"a", "e", "i", "o", "u"};

// Arabic consonants split into two disjoint sets; long vowels shared.
const std::vector<std::string> kArCons = {"ب", "ت", "د", "ر", "س", "ك", "ل", "م", "ن", "ف", "ق", "ج"};
const std::vector<std::string> kArConsAlt = {"ث", "ح", "خ", "ذ", "ز", "ش", "ص", "ض", "ط", "ظ", "ع", "غ"};
const std::vector<std::string> kArVowel = {"ا", "و", "ي"};

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(v.size()) - 1))];
}

}  // namespace

std::string en_word(Rng& rng, Alphabet a) {
  const auto& onset = a == Alphabet::Primary ? kEnOnset : kEnOnsetAlt;
  std::string w;
  const int syllables = rng.uniform(1, 2);
  for (int i = 0; i < syllables; ++i) w += pick(rng, onset) + pick(rng, kEnVowel);
  if (rng.chance(0.5)) w += pick(rng, onset);
  return w;
}

std::string ar_word(Rng& rng, Alphabet a) {
  const auto& cons = a == Alphabet::Primary ? kArCons : kArConsAlt;
  std::string w;
  const int letters = rng.uniform(2, 4);
  for (int i = 0; i < letters; ++i) w += (i % 2 == 1 && rng.chance(0.4)) ? pick(rng, kArVowel) : pick(rng, cons);
  return w;
}

std::string en_sentence(Rng& rng, int words, Alphabet a) {
  std::string s;
  for (int i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += en_word(rng, a);
  }
  return s;
}

std::string ar_sentence(Rng& rng, int words, Alphabet a) {
  std::string s;
  for (int i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += ar_word(rng, a);
  }
  return s;
}

tarjim::ParallelPair pair(Rng& rng, const std::string& id, int words, Alphabet a) {
  tarjim::ParallelPair p;
  p.id = id;
  p.ar = ar_sentence(rng, words, a);
  p.en = en_sentence(rng, words, a);
  p.origin = rng.chance(0.5) ? tarjim::Origin::Arabic : tarjim::Origin::English;
  return p;
}

std::vector<tarjim::ParallelPair> corpus(Rng& rng, std::size_t count, int min_words, int max_words,
                                         const std::string& id_prefix, Alphabet a) {
  std::vector<tarjim::ParallelPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(pair(rng, id_prefix + std::to_string(i), rng.uniform(min_words, max_words), a));
  }
  return out;
}

std::vector<tarjim::BenchmarkEntry> benchmark(Rng& rng, std::size_t ar_origin, std::size_t en_origin,
                                              int min_words, int max_words) {
  static const std::vector<std::string> domains = {"scientific", "technical", "healthcare", "cultural",
                                                   "general"};
  std::vector<tarjim::BenchmarkEntry> out;
  for (std::size_t i = 0; i < ar_origin + en_origin; ++i) {
    tarjim::BenchmarkEntry e;
    e.pair.id = "t25-" + std::to_string(i);
    const int origin_words = rng.uniform(min_words, max_words);
    // Translations drift a little in length, sometimes outside the band.
    const int other_words = std::max(1, origin_words + rng.uniform(-8, 8));
    e.pair.origin = i < ar_origin ? tarjim::Origin::Arabic : tarjim::Origin::English;
    const bool ar = e.pair.origin == tarjim::Origin::Arabic;
    e.pair.ar = ar_sentence(rng, ar ? origin_words : other_words);
    e.pair.en = en_sentence(rng, ar ? other_words : origin_words);
    e.pair.domain = domains[i % domains.size()];
    out.push_back(std::move(e));
  }
  return out;
}

void plant(tarjim::ParallelPair& target, const tarjim::ParallelPair& source, tarjim::Origin side,
           std::size_t from, std::size_t n) {
  const bool ar = side == tarjim::Origin::Arabic;
  auto words = split(ar ? target.ar : target.en);
  const auto src = split(ar ? source.ar : source.en);
  if (from + n > src.size()) throw std::out_of_range("plant: source side has " + std::to_string(src.size()) + " words");
  const auto at = words.empty() ? words.begin() : words.begin() + 1;
  words.insert(at, src.begin() + static_cast<long>(from), src.begin() + static_cast<long>(from + n));
  (ar ? target.ar : target.en) = join(words, 0, words.size());
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t count) {
  std::string s;
  for (std::size_t i = from; i < from + count && i < words.size(); ++i) {
    if (!s.empty()) s += ' ';
    s += words[i];
  }
  return s;
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("tarjim-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace synth
