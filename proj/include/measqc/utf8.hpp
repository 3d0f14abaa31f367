// Copyright 2026 The measqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// UTF-8 helpers. All character offsets in measqc are Unicode scalar-value
// indices, so text is decoded to std::u32string wherever offsets matter.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/error.hpp"

namespace measqc::utf8 {

// Decodes UTF-8. Invalid sequences decode to U+FFFD one byte at a time.
inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(char32_t{0xFFFD});
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
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

inline std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append(out, cp);
  return out;
}

// Number of scalar values in a UTF-8 string.
inline std::size_t length(std::string_view s) { return decode(s).size(); }

// Substring by scalar-value offsets [start, end).
inline std::string substr(std::string_view s, std::size_t start, std::size_t end) {
  const std::u32string d = decode(s);
  if (start > end || end > d.size()) {
    throw Error("utf8::substr: offsets [" + std::to_string(start) + ", " +
                std::to_string(end) + ") outside text of length " +
                std::to_string(d.size()));
  }
  return encode(std::u32string_view(d).substr(start, end - start));
}

inline bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v' || c == 0x00A0 || c == 0x2002 || c == 0x2003 ||
         c == 0x2009 || c == 0x200A || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

inline bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline bool is_ascii_alpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

inline bool is_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }

// Letters: ASCII, Latin-1 and Latin Extended letters, Greek, Cyrillic.
// The micro sign U+00B5 is deliberately not a letter; it is a unit symbol.
inline bool is_letter(char32_t c) {
  if (is_ascii_alpha(c)) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x370 && c <= 0x3FF) return true;
  if (c >= 0x400 && c <= 0x4FF) return true;
  return false;
}

inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

inline char32_t ascii_lower(char32_t c) {
  return (c >= U'A' && c <= U'Z') ? c + 32 : c;
}

inline std::u32string ascii_lower(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = ascii_lower(c);
  return out;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

// Whitespace-collapsed view of a text plus, for every output position, the
// index of the input character it came from. Leading/trailing whitespace is
// dropped and interior runs become one ' '.
struct Normalized {
  std::u32string text;
  std::vector<std::size_t> origin;
};

inline Normalized normalize_whitespace(std::u32string_view s) {
  Normalized n;
  bool pending_space = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_space(s[i])) {
      pending_space = !n.text.empty();
      continue;
    }
    if (pending_space) {
      n.text.push_back(U' ');
      n.origin.push_back(i - 1);
      pending_space = false;
    }
    n.text.push_back(s[i]);
    n.origin.push_back(i);
  }
  return n;
}

inline std::string normalize_whitespace(std::string_view s) {
  return encode(normalize_whitespace(decode(s)).text);
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' ||
                   s[e - 1] == '\n'))
    --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace measqc::utf8
