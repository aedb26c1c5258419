#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bext {

// Rejection of a malformed expression, carrying the byte offset at which
// parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Runtime evaluation failure, currently only division by zero.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExprOp : std::uint8_t {
  kConstant,
  kVar,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kSin,
  kCos,
  kPow,
};

struct ExprNode {
  ExprOp op = ExprOp::kConstant;
  double value = 0.0;  // kConstant
  int lhs = -1;
  int rhs = -1;
  int exponent = 0;  // kPow
};

// One-variable real expression over t: decimal constants, pi, + - * /, unary
// minus, sin, cos, parentheses, and ^ with an integer literal exponent.
// Immutable once parsed; evaluation is deterministic.
class LiftExpr {
 public:
  double operator()(double t) const;

  const std::string& source() const { return source_; }
  std::string dump() const;  // canonical prefix form

 private:
  friend LiftExpr parse_lift(std::string_view source);

  double eval_node(int index, double t) const;
  void dump_node(int index, std::string& out) const;

  std::vector<ExprNode> nodes_;
  int root_ = -1;
  std::string source_;
};

LiftExpr parse_lift(std::string_view source);

}  // namespace bext
