#ifndef TRANSTYLE_NORMALIZE_H_
#define TRANSTYLE_NORMALIZE_H_

#include <cstdint>
#include <string>

namespace transtyle {

struct NormalizeStats {
  std::int64_t urls_removed = 0;
  std::int64_t ellipses_normalized = 0;
  std::int64_t punct_converted = 0;

  bool changed() const {
    return urls_removed + ellipses_normalized + punct_converted > 0;
  }
  NormalizeStats& operator+=(const NormalizeStats& o) {
    urls_removed += o.urls_removed;
    ellipses_normalized += o.ellipses_normalized;
    punct_converted += o.punct_converted;
    return *this;
  }
};

// Text cleanup applied before parsing:
//   1. URL spans (scheme://... runs of URL characters) are removed;
//   2. runs of 3+ ideographic full stops or 3+ ASCII dots become "……";
//   3. ASCII punctuation is converted to its full-width counterpart
//      (letters and digits are left alone).
// Total and idempotent; never reorders surviving characters.
std::string normalize_text(const std::string& raw, NormalizeStats* stats = nullptr);

// Version tag of the half-to-full-width punctuation table; recorded in
// reports so normalized corpora can be tied to the exact mapping used.
extern const char* const kPunctTableVersion;

}  // namespace transtyle

#endif  // TRANSTYLE_NORMALIZE_H_
