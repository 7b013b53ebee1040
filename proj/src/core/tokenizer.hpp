#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tarjim {

using TokenId = std::int32_t;

enum class SpecialToken { English, Arabic, EndOfSequence };

inline constexpr std::string_view kEnglishTag = "<|English|>";
inline constexpr std::string_view kArabicTag = "<|Arabic|>";
inline constexpr std::string_view kEndOfSequence = "<|endoftext|>";

std::string_view special_text(SpecialToken t);

// Tokenizer contract used by the composer. encode() handles ordinary text
// only and must never yield a special id; decode() renders special ids as
// their literal strings. decode(encode(t)) == t for every byte string t.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<TokenId> encode(std::string_view text) const = 0;
  virtual std::string decode(std::span<const TokenId> ids) const = 0;
  virtual TokenId special_id(SpecialToken t) const = 0;
  virtual bool is_special(TokenId id) const = 0;

  std::vector<TokenId> newline_ids() const { return encode("\n"); }
};

// One id per UTF-8 byte (0-255); specials are reserved ids 256-258.
class ByteTokenizer final : public Tokenizer {
 public:
  static constexpr TokenId kEnglishId = 256;
  static constexpr TokenId kArabicId = 257;
  static constexpr TokenId kEosId = 258;

  std::vector<TokenId> encode(std::string_view text) const override;
  std::string decode(std::span<const TokenId> ids) const override;
  TokenId special_id(SpecialToken t) const override;
  bool is_special(TokenId id) const override { return id >= kEnglishId && id <= kEosId; }
};

}  // namespace tarjim
