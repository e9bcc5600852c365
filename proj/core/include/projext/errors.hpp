#pragma once

#include <stdexcept>
#include <string>

namespace projext {

/// Shapes or block structure disagree (operator vs. algebra, map vs. operator).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (e.g. a non-projection where a
/// projection is required, a non-monotone chain).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A document did not match the expected schema. `path()` is a JSON pointer
/// into the offending document.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace projext
