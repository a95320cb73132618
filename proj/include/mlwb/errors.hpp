#ifndef MLWB_ERRORS_HPP
#define MLWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlwb {

// Syntax error with source position (1-based line/column).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class ArityMismatchError : public std::runtime_error {
 public:
  explicit ArityMismatchError(const std::string& what)
      : std::runtime_error("arity mismatch: " + what) {}
};

// Missing interpretation/assignment, malformed model, quantifier policy.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration exceeded the configured step budget.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed input file (frame/algebra/model/proof documents).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mlwb

#endif
