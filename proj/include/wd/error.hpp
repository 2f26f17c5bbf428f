#pragma once

#include <stdexcept>
#include <string>

namespace wd {

enum class ErrorKind {
  kDuplicateWire,
  kUnknownWire,
  kUnsolderedWire,
  kDanglingCable,
  kInterfaceMismatch,
  kTypeMismatch,
  kStarMismatch,
  kInvalidPermutation,
  kInvalidArgument,
  kBoundExceeded,
  kBudgetExhausted,
  kParse,
  kUnresolvedName,
  kDomain,
  kIo,
};

const char* to_string(ErrorKind kind);

// User-facing failure: bad input, mismatched interfaces, malformed scripts.
// Broken internal invariants are reported with std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wd
