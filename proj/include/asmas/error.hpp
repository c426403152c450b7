#pragma once

#include <stdexcept>
#include <string>

namespace asmas {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-parsable class name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct ParseError : Error {
  ParseError(const std::string& what, int line = 0, int col = 0)
      : Error("parse-error", what), line(line), col(col) {}
  int line;
  int col;
};

struct ModelError : Error {
  explicit ModelError(const std::string& what) : Error("model-error", what) {}
};

struct FragmentError : Error {
  explicit FragmentError(const std::string& what) : Error("fragment-error", what) {}
};

struct EvalError : Error {
  EvalError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

}  // namespace asmas
