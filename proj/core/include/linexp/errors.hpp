#ifndef LINEXP_ERRORS_HPP
#define LINEXP_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace linexp {

/// Input data violated a model or domain constraint. When the problem is
/// attributable to a single feature, feature_index() holds its 0-based
/// index; messages use the 1-based e1..en naming.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
  ValidationError(const std::string& msg, std::size_t feature_index)
      : std::runtime_error(msg), feature_(feature_index) {}

  std::optional<std::size_t> feature_index() const noexcept { return feature_; }

private:
  std::optional<std::size_t> feature_;
};

/// A brute-force oracle routine was asked for more work than its size guard
/// allows.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. line() is 1-based; 0 means the whole document.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(msg), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace linexp

#endif
