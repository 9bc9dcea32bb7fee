#pragma once

#include <stdexcept>
#include <string>

namespace mvx {

// Mis-shaped inputs: dimension mismatch, wrong grade, bad arity.
struct StructuralError : std::runtime_error {
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Point evaluation failed: out-of-domain point, sqrt of a negative,
// division by zero, non-finite intermediate.
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A map that must be invertible is (numerically) singular.
struct SingularError : std::runtime_error {
  explicit SingularError(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario / expression text rejected; carries 1-based position.
struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

}  // namespace mvx
