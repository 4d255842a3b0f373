#pragma once

#include <stdexcept>
#include <string>

namespace neforge {

enum class ErrorKind {
  InvalidGraph,
  OwnershipGap,
  InitialTerminal,
  PreferenceNotPermutation,
  LabelMismatch,
  ModeMismatch,
  InvalidProfile,
  Precondition,
  Unsupported,
  Parse,
};

const char* to_string(ErrorKind kind);

// Every failure surfaced by the library carries a kind so the CLI can map it
// to a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace neforge
