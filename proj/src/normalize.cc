#include "normalize.h"

#include <algorithm>

#include "utf8.h"

namespace transtyle {

const char* const kPunctTableVersion = "punct-fullwidth-v1";

namespace {

constexpr char32_t kIdeographicStop = 0x3002;  // 。
constexpr char32_t kEllipsis = 0x2026;         // …

bool is_ascii_punct(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

// U+0021..U+007E shift uniformly to U+FF01..U+FF5E.
char32_t to_fullwidth(char32_t cp) { return cp + 0xFEE0; }

bool is_scheme_char(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
         (cp >= '0' && cp <= '9') || cp == '+' || cp == '-' || cp == '.';
}

bool is_scheme_start(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

// RFC 3986 charset; a URL span ends at the first character outside it,
// so URLs embedded in Chinese text stop at the first hanzi.
bool is_url_char(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
      (cp >= '0' && cp <= '9'))
    return true;
  switch (cp) {
    case '-': case '.': case '_': case '~': case ':': case '/': case '?':
    case '#': case '[': case ']': case '@': case '!': case '$': case '&':
    case '\'': case '(': case ')': case '*': case '+': case ',': case ';':
    case '=': case '%':
      return true;
    default:
      return false;
  }
}

std::vector<char32_t> remove_urls(const std::vector<char32_t>& in,
                                  NormalizeStats* stats) {
  std::vector<char32_t> out;
  out.reserve(in.size());
  std::size_t i = 0;
  const std::size_t n = in.size();
  while (i < n) {
    // Look for "://" and walk back over the scheme.
    if (in[i] == ':' && i + 2 < n && in[i + 1] == '/' && in[i + 2] == '/') {
      std::size_t start = out.size();
      while (start > 0 && is_scheme_char(out[start - 1])) --start;
      // The scheme must begin with a letter somewhere in the run.
      while (start < out.size() && !is_scheme_start(out[start])) ++start;
      if (start < out.size()) {
        out.resize(start);
        std::size_t j = i + 3;
        while (j < n && is_url_char(in[j])) ++j;
        i = j;
        if (stats) ++stats->urls_removed;
        continue;
      }
    }
    out.push_back(in[i]);
    ++i;
  }
  return out;
}

std::vector<char32_t> normalize_ellipses(const std::vector<char32_t>& in,
                                         NormalizeStats* stats) {
  std::vector<char32_t> out;
  out.reserve(in.size());
  std::size_t i = 0;
  const std::size_t n = in.size();
  while (i < n) {
    char32_t cp = in[i];
    if (cp == kIdeographicStop || cp == '.') {
      std::size_t j = i;
      while (j < n && in[j] == cp) ++j;
      if (j - i >= 3) {
        out.push_back(kEllipsis);
        out.push_back(kEllipsis);
        if (stats) ++stats->ellipses_normalized;
      } else {
        for (std::size_t k = i; k < j; ++k) out.push_back(cp);
      }
      i = j;
      continue;
    }
    out.push_back(cp);
    ++i;
  }
  return out;
}

}  // namespace

std::string normalize_text(const std::string& raw, NormalizeStats* stats) {
  std::vector<char32_t> cps = utf8::decode(raw);
  cps = remove_urls(cps, stats);
  cps = normalize_ellipses(cps, stats);
  for (char32_t& cp : cps) {
    if (is_ascii_punct(cp)) {
      cp = to_fullwidth(cp);
      if (stats) ++stats->punct_converted;
    }
  }
  return utf8::encode(cps);
}

}  // namespace transtyle
