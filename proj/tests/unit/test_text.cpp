#include <doctest.h>

#include "core/digest.hpp"
#include "core/text.hpp"

using namespace tarjim;

TEST_CASE("utf8 decode and encode") {
  const std::string s = "aéب\U0001F642";
  CHECK(text::is_valid_utf8(s));
  CHECK(text::codepoint_count(s) == 4);
  CHECK(text::encode(text::decode(s)) == s);
  CHECK_FALSE(text::is_valid_utf8("\xC3"));
  CHECK_FALSE(text::is_valid_utf8("\xED\xA0\x80"));  // surrogate
  CHECK(text::decode("\xFF") == U"�");
}

TEST_CASE("whitespace follows python isspace") {
  CHECK(text::is_space(U' '));
  CHECK(text::is_space(U'\x1c'));
  CHECK(text::is_space(U'\u0085'));
  CHECK(text::is_space(U' '));
  CHECK(text::is_space(U'　'));
  CHECK_FALSE(text::is_space(U'​'));
  CHECK(text::split_words("  a\tb c  ").size() == 3);
  CHECK(text::word_count("") == 0);
}

TEST_CASE("normalize") {
  CHECK(text::normalize("  hello   world ") == "hello world");
  CHECK(text::normalize("é") == "é");
  CHECK(text::normalize("كـتاب") == "كـتاب");
  CHECK(text::to_lower("Hello ÉCOLE") == "hello école");
}

TEST_CASE("script tables") {
  CHECK(text::is_arabic_script(U'ب'));
  CHECK(text::is_arabic_script(U'ࢠ'));
  CHECK_FALSE(text::is_arabic_script(U'a'));
  CHECK(text::is_latin_script(U'a'));
  CHECK(text::is_latin_script(U'é'));
  CHECK_FALSE(text::is_latin_script(U'×'));
  CHECK_FALSE(text::is_latin_script(U'ب'));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
