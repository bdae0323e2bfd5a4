#ifndef TRANSTYLE_UTF8_H_
#define TRANSTYLE_UTF8_H_

#include <cstdint>
#include <string>
#include <vector>

namespace transtyle::utf8 {

// Decodes UTF-8 into codepoints. Invalid bytes are passed through as
// U+FFFD so normalization stays total on arbitrary input.
std::vector<char32_t> decode(const std::string& text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Number of codepoints in a UTF-8 string.
std::size_t length(const std::string& text);

}  // namespace transtyle::utf8

#endif  // TRANSTYLE_UTF8_H_
