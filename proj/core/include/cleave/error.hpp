#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cleave {

// Every refusal in the library is an Error with a stable machine-readable
// kind ("MissingComposite", "NotGood", ...) plus a human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, const std::string& kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

} // namespace cleave
