#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fanoqh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed family expression or polytope file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : Error(what), position_(std::string::npos) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Violated polytope precondition: degenerate input, redundant vertex,
// origin not interior, non-reflexive, non-simple vertex.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Evaluation off the algebraic torus (a zero coordinate).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Root finder or critical-point enumeration failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace fanoqh
