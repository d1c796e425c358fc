#pragma once

// Minimal UTF-8 helpers: decoding, encoding, a letter/digit classifier and
// simple case folding for the Latin, Greek and Cyrillic blocks. Enough for
// European news text; not a replacement for ICU.

#include <cstdint>
#include <string>
#include <string_view>

namespace selkey::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point starting at `pos` and advances `pos`. Malformed
/// sequences yield U+FFFD and consume a single byte.
inline char32_t decode(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

/// Letters and digits form word tokens. Outside ASCII, anything that is not
/// whitespace, a symbol/punctuation block, or a control character counts as a
/// letter.
inline bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp == kReplacement || is_space(cp)) return false;
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;  // ª µ º
  if (cp == 0xD7 || cp == 0xF7) return false;                    // × ÷
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  return true;
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  // Latin-1 supplement.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  // Latin Extended-A: mostly even upper / odd lower pairs.
  if (cp >= 0x0100 && cp <= 0x017F) {
    if (cp == 0x0130) return 'i';
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E))
      return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x0178) return 0xFF;
    if (cp <= 0x0137 || (cp >= 0x014A && cp <= 0x0177))
      return (cp % 2 == 0) ? cp + 1 : cp;
    return cp;
  }
  // Latin Extended-B digraphs used in Croatian (DŽ Dž dž, LJ Lj lj, NJ Nj nj).
  if (cp >= 0x01C4 && cp <= 0x01CC) {
    const char32_t base = cp - (cp - 0x01C4) % 3;
    return base + 2;
  }
  // Greek.
  if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 32;
  // Cyrillic.
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  return cp;
}

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) append(out, to_lower(decode(s, pos)));
  return out;
}

/// Trims ASCII and Unicode whitespace from both ends.
inline std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos;
    if (!is_space(decode(s, next))) break;
    pos = next;
    begin = pos;
  }
  s.remove_prefix(begin);
  // Back up over trailing whitespace by rescanning; strings here are short.
  std::size_t end = 0;
  pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos;
    if (!is_space(decode(s, next))) end = next;
    pos = next;
  }
  return s.substr(0, end);
}

}  // namespace selkey::utf8
