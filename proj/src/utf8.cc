#include "utf8.h"

namespace transtyle::utf8 {

namespace {
constexpr char32_t kReplacement = 0xFFFD;
}

std::vector<char32_t> decode(const std::string& text) {
  std::vector<char32_t> cps;
  cps.reserve(text.size());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      cps.push_back(b0);
      ++i;
      continue;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      cps.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= n) {
      // Truncated sequence at end of input.
      cps.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    char32_t acc = cp;
    for (int k = 1; k <= extra; ++k) {
      unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      acc = (acc << 6) | (b & 0x3F);
    }
    if (!ok) {
      cps.push_back(kReplacement);
      ++i;
      continue;
    }
    cps.push_back(acc);
    i += extra + 1;
  }
  return cps;
}

void append(std::string& out, char32_t cp) {
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

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (char32_t cp : cps) append(out, cp);
  return out;
}

std::size_t length(const std::string& text) {
  std::size_t count = 0;
  for (unsigned char b : text) {
    if ((b & 0xC0) != 0x80) ++count;
  }
  return count;
}

}  // namespace transtyle::utf8
