#include "bext/lift_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "bext/angle.hpp"

namespace bext {
namespace {

// Recursive descent over
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)?
//   atom   := number | 't' | 'pi' | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  std::vector<ExprNode>& nodes;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(message, pos); }

  int add(ExprNode node) {
    nodes.push_back(node);
    return static_cast<int>(nodes.size()) - 1;
  }

  int expr() {
    int lhs = term();
    while (true) {
      if (consume('+')) {
        int rhs = term();
        lhs = add({ExprOp::kAdd, 0.0, lhs, rhs, 0});
      } else if (consume('-')) {
        int rhs = term();
        lhs = add({ExprOp::kSub, 0.0, lhs, rhs, 0});
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = factor();
    while (true) {
      if (consume('*')) {
        int rhs = factor();
        lhs = add({ExprOp::kMul, 0.0, lhs, rhs, 0});
      } else if (consume('/')) {
        int rhs = factor();
        lhs = add({ExprOp::kDiv, 0.0, lhs, rhs, 0});
      } else {
        return lhs;
      }
    }
  }

  int factor() {
    if (consume('-')) {
      int operand = factor();
      return add({ExprOp::kNeg, 0.0, operand, -1, 0});
    }
    return power();
  }

  int power() {
    int base = atom();
    if (!consume('^')) return base;
    int exponent = integer_literal();
    return add({ExprOp::kPow, 0.0, base, -1, exponent});
  }

  int integer_literal() {
    skip_ws();
    std::size_t start = pos;
    if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected an integer exponent after '^'");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + pos, value);
    if (ec != std::errc() || ptr != src.data() + pos) {
      pos = start;
      fail("integer exponent out of range");
    }
    return value;
  }

  int atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of expression");
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      ++pos;
      int inner = expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    fail("expected a number, 't', 'pi', 'sin', 'cos', '(' or unary '-'");
  }

  int number() {
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos < src.size() && src[pos] == '.') {
      ++pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos;
      ++pos;
      if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      } else {
        pos = mark;  // the 'e' belongs to something else; not part of this number
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + pos, value);
    if (ec != std::errc() || ptr != src.data() + pos) {
      pos = start;
      fail("malformed number");
    }
    return add({ExprOp::kConstant, value, -1, -1, 0});
  }

  int identifier() {
    std::size_t start = pos;
    while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) ++pos;
    std::string_view name = src.substr(start, pos - start);
    if (name == "t") return add({ExprOp::kVar, 0.0, -1, -1, 0});
    if (name == "pi") return add({ExprOp::kConstant, kPi, -1, -1, 0});
    if (name == "sin" || name == "cos") {
      ExprOp op = name == "sin" ? ExprOp::kSin : ExprOp::kCos;
      if (!consume('(')) fail("expected '(' after '" + std::string(name) + "'");
      int inner = expr();
      if (!consume(')')) fail("expected ')'");
      return add({op, 0.0, inner, -1, 0});
    }
    pos = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }
};

double integer_pow(double base, int exponent) {
  if (exponent < 0) {
    double denom = integer_pow(base, -exponent);
    if (denom == 0.0) throw EvalError("division by zero in negative power");
    return 1.0 / denom;
  }
  double result = 1.0;
  double acc = base;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result *= acc;
    if (e > 1) acc *= acc;
  }
  return result;
}

void append_number(double v, std::string& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  out += buf;
}

}  // namespace

double LiftExpr::eval_node(int index, double t) const {
  const ExprNode& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.op) {
    case ExprOp::kConstant:
      return n.value;
    case ExprOp::kVar:
      return t;
    case ExprOp::kAdd:
      return eval_node(n.lhs, t) + eval_node(n.rhs, t);
    case ExprOp::kSub:
      return eval_node(n.lhs, t) - eval_node(n.rhs, t);
    case ExprOp::kMul:
      return eval_node(n.lhs, t) * eval_node(n.rhs, t);
    case ExprOp::kDiv: {
      double denom = eval_node(n.rhs, t);
      if (denom == 0.0) throw EvalError("division by zero");
      return eval_node(n.lhs, t) / denom;
    }
    case ExprOp::kNeg:
      return -eval_node(n.lhs, t);
    case ExprOp::kSin:
      return std::sin(eval_node(n.lhs, t));
    case ExprOp::kCos:
      return std::cos(eval_node(n.lhs, t));
    case ExprOp::kPow:
      return integer_pow(eval_node(n.lhs, t), n.exponent);
  }
  throw EvalError("corrupt expression node");
}

double LiftExpr::operator()(double t) const { return eval_node(root_, t); }

void LiftExpr::dump_node(int index, std::string& out) const {
  const ExprNode& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.op) {
    case ExprOp::kConstant:
      append_number(n.value, out);
      return;
    case ExprOp::kVar:
      out += 't';
      return;
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv: {
      const char* tag = n.op == ExprOp::kAdd   ? "+"
                        : n.op == ExprOp::kSub ? "-"
                        : n.op == ExprOp::kMul ? "*"
                                               : "/";
      out += '(';
      out += tag;
      out += ' ';
      dump_node(n.lhs, out);
      out += ' ';
      dump_node(n.rhs, out);
      out += ')';
      return;
    }
    case ExprOp::kNeg:
      out += "(neg ";
      dump_node(n.lhs, out);
      out += ')';
      return;
    case ExprOp::kSin:
    case ExprOp::kCos:
      out += n.op == ExprOp::kSin ? "(sin " : "(cos ";
      dump_node(n.lhs, out);
      out += ')';
      return;
    case ExprOp::kPow:
      out += "(pow ";
      dump_node(n.lhs, out);
      out += ' ';
      out += std::to_string(n.exponent);
      out += ')';
      return;
  }
}

std::string LiftExpr::dump() const {
  std::string out;
  dump_node(root_, out);
  return out;
}

LiftExpr parse_lift(std::string_view source) {
  LiftExpr result;
  result.source_.assign(source);
  Parser parser{source, 0, result.nodes_};
  result.root_ = parser.expr();
  parser.skip_ws();
  if (parser.pos != source.size()) parser.fail("unexpected trailing input");
  return result;
}

}  // namespace bext
