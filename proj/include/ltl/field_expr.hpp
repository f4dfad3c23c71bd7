#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ltl/errors.hpp"

namespace ltl {

// Scalar-field expressions over ambient coordinates x1,x2,x3 or stored
// parametric coordinates u,v. Grammar (EBNF, see docs/field-expressions.md):
//
//   expr    := term (("+" | "-") term)*
//   term    := factor (("*" | "/") factor)*
//   factor  := "-" factor | primary
//   primary := number | variable | function "(" expr ")" | "(" expr ")"
//
// Functions: sin, cos, exp, sqrt, abs.

enum class FieldVar { x1, x2, x3, u, v };

const char* to_string(FieldVar var);

struct SourceSpan {
  int begin = -1;
  int end = -1;
  bool known() const { return begin >= 0; }
};

class ExprParseError : public Error {
public:
  ExprParseError(const std::string& msg, int at, std::string expected_set = "")
      : Error(msg), offset(at), expected(std::move(expected_set)) {}
  int offset;
  std::string expected;
};

class EvalError : public Error {
public:
  EvalError(const std::string& msg, SourceSpan at) : Error(msg), span(at) {}
  SourceSpan span;
};

namespace detail {
struct ExprNode;
}

class FieldExpr {
public:
  FieldExpr() = default;
  explicit FieldExpr(std::shared_ptr<const detail::ExprNode> root)
      : root_(std::move(root)) {}
  const detail::ExprNode* node() const { return root_.get(); }
  std::shared_ptr<const detail::ExprNode> shared() const { return root_; }
  bool valid() const { return root_ != nullptr; }

private:
  std::shared_ptr<const detail::ExprNode> root_;
};

struct Bindings {
  std::optional<double> values[5];

  Bindings& set(FieldVar var, double value) {
    values[static_cast<int>(var)] = value;
    return *this;
  }
  std::optional<double> get(FieldVar var) const {
    return values[static_cast<int>(var)];
  }
  static Bindings ambient(double x1, double x2, double x3) {
    return Bindings{}.set(FieldVar::x1, x1).set(FieldVar::x2, x2).set(
        FieldVar::x3, x3);
  }
  static Bindings parametric(double u, double v) {
    return Bindings{}.set(FieldVar::u, u).set(FieldVar::v, v);
  }
};

FieldExpr parse_field(std::string_view text);
std::string to_string(const FieldExpr& expr);
double evaluate(const FieldExpr& expr, const Bindings& bindings);
FieldExpr differentiate(const FieldExpr& expr, FieldVar var);
FieldExpr substitute(const FieldExpr& expr,
                     const std::map<FieldVar, FieldExpr>& replacements);
std::set<FieldVar> variables(const FieldExpr& expr);
FieldExpr constant_expr(double value);

// Structural equality, ignoring source spans.
bool structurally_equal(const FieldExpr& a, const FieldExpr& b);

}  // namespace ltl
