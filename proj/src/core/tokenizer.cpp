#include "core/tokenizer.hpp"

#include "core/error.hpp"

namespace tarjim {

std::string_view special_text(SpecialToken t) {
  switch (t) {
    case SpecialToken::English: return kEnglishTag;
    case SpecialToken::Arabic: return kArabicTag;
    case SpecialToken::EndOfSequence: return kEndOfSequence;
  }
  return {};
}

std::vector<TokenId> ByteTokenizer::encode(std::string_view text) const {
  std::vector<TokenId> ids;
  ids.reserve(text.size());
  for (unsigned char c : text) ids.push_back(c);
  return ids;
}

std::string ByteTokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  out.reserve(ids.size());
  for (TokenId id : ids) {
    if (id >= 0 && id < 256) {
      out.push_back(static_cast<char>(id));
    } else if (id == kEnglishId) {
      out += kEnglishTag;
    } else if (id == kArabicId) {
      out += kArabicTag;
    } else if (id == kEosId) {
      out += kEndOfSequence;
    } else {
      fail(ErrorCode::InvalidArgument, "token id out of range: " + std::to_string(id));
    }
  }
  return out;
}

TokenId ByteTokenizer::special_id(SpecialToken t) const {
  switch (t) {
    case SpecialToken::English: return kEnglishId;
    case SpecialToken::Arabic: return kArabicId;
    case SpecialToken::EndOfSequence: return kEosId;
  }
  return kEosId;
}

}  // namespace tarjim
