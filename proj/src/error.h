#ifndef TRANSTYLE_ERROR_H_
#define TRANSTYLE_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace transtyle {

// Data-level failure with a stable machine-readable code, e.g.
// "UnbalancedBrackets", "DuplicateId", "SingleClass". The CLI maps
// these to exit status 2; anything else is an internal error.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace transtyle

#endif  // TRANSTYLE_ERROR_H_
