#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "synth.hpp"

namespace oracle {

namespace {

std::vector<std::string> words(const std::string& text, bool english) {
  auto w = synth::split(text);
  if (english) {
    for (auto& s : w) {
      std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
      });
    }
  }
  return w;
}

std::vector<std::string> windows(const std::vector<std::string>& w, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.push_back(synth::join(w, i, n));
  return out;
}

}  // namespace

double script_fraction(const std::string& s, bool arabic) {
  std::size_t letters = 0, hits = 0;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    char32_t cp;
    int len;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c >> 5) == 6) {
      cp = ((c & 0x1F) << 6) | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((c >> 4) == 14) {
      cp = ((c & 0x0F) << 12) | ((s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
      len = 3;
    } else {
      cp = ((c & 0x07) << 18) | ((s[i + 1] & 0x3F) << 12) | ((s[i + 2] & 0x3F) << 6) | (s[i + 3] & 0x3F);
      len = 4;
    }
    i += static_cast<std::size_t>(len);
    const bool ascii_letter = (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    const bool latin_ext = (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7);
    const bool arabic_letter = (cp >= 0x621 && cp <= 0x64A) || (cp >= 0x671 && cp <= 0x6D3) || cp == 0x640;
    if (!(ascii_letter || latin_ext || arabic_letter)) continue;
    ++letters;
    if (arabic ? arabic_letter : (ascii_letter || latin_ext)) ++hits;
  }
  return letters ? static_cast<double>(hits) / static_cast<double>(letters) : -1.0;
}

bool Hit::operator<(const Hit& o) const {
  return std::tie(benchmark_id, corpus_id, side, corpus_pos) <
         std::tie(o.benchmark_id, o.corpus_id, o.side, o.corpus_pos);
}

std::vector<Hit> contamination(const std::vector<tarjim::ParallelPair>& corpus,
                               const std::vector<tarjim::BenchmarkEntry>& entries, std::size_t n) {
  std::vector<Hit> out;
  for (const auto side : {tarjim::Origin::Arabic, tarjim::Origin::English}) {
    const bool en = side == tarjim::Origin::English;
    std::vector<std::set<std::string>> bench;
    for (const auto& e : entries) {
      const auto w = windows(words(en ? e.pair.en : e.pair.ar, en), n);
      bench.emplace_back(w.begin(), w.end());
    }
    for (const auto& p : corpus) {
      const auto cw = windows(words(en ? p.en : p.ar, en), n);
      for (std::size_t b = 0; b < entries.size(); ++b) {
        std::size_t shared = 0, first = 0;
        for (std::size_t i = 0; i < cw.size(); ++i) {
          if (!bench[b].count(cw[i])) continue;
          if (shared++ == 0) first = i;
        }
        if (shared) out.push_back({entries[b].pair.id, p.id, side, cw[first], first, shared});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
