#include "ltl/field_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace ltl {

const char* to_string(FieldVar var) {
  switch (var) {
    case FieldVar::x1: return "x1";
    case FieldVar::x2: return "x2";
    case FieldVar::x3: return "x3";
    case FieldVar::u: return "u";
    case FieldVar::v: return "v";
  }
  return "?";
}

namespace detail {

enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Call };

// `sign` is internal only: it appears in derivatives of abs and is not part
// of the user-facing grammar.
enum class Func { Sin, Cos, Exp, Sqrt, Abs, Sign };

struct ExprNode {
  Kind kind;
  double number = 0.0;
  FieldVar var = FieldVar::x1;
  Func func = Func::Sin;
  std::shared_ptr<const ExprNode> lhs, rhs;
  SourceSpan span;
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double value, SourceSpan span = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Number;
  n->number = value;
  n->span = span;
  return n;
}

NodePtr make_var(FieldVar var, SourceSpan span = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Var;
  n->var = var;
  n->span = span;
  return n;
}

NodePtr make_node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr,
                  SourceSpan span = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->span = span;
  return n;
}

NodePtr make_call(Func func, NodePtr arg, SourceSpan span = {}) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Call;
  n->func = func;
  n->lhs = std::move(arg);
  n->span = span;
  return n;
}

bool is_number(const NodePtr& n, double value) {
  return n->kind == Kind::Number && n->number == value;
}

// Simplifying constructors used by differentiate(); they fold constants and
// drop algebraic identities so derivative trees stay small.
NodePtr s_neg(NodePtr a) {
  if (a->kind == Kind::Number) return make_number(-a->number);
  if (a->kind == Kind::Neg) return a->lhs;
  return make_node(Kind::Neg, std::move(a));
}

NodePtr s_add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->number + b->number);
  return make_node(Kind::Add, std::move(a), std::move(b));
}

NodePtr s_sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return s_neg(std::move(b));
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->number - b->number);
  return make_node(Kind::Sub, std::move(a), std::move(b));
}

NodePtr s_mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number)
    return make_number(a->number * b->number);
  return make_node(Kind::Mul, std::move(a), std::move(b));
}

NodePtr s_div(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) && !is_number(b, 0.0)) return make_number(0.0);
  if (is_number(b, 1.0)) return a;
  if (a->kind == Kind::Number && b->kind == Kind::Number && b->number != 0.0)
    return make_number(a->number / b->number);
  return make_node(Kind::Div, std::move(a), std::move(b));
}

// ---- parser ----------------------------------------------------------

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
    skip_ws();
    throw ExprParseError(msg + " at offset " + std::to_string(pos),
                         static_cast<int>(pos), expected);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'", std::string(1, c));
    ++pos;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const int at = static_cast<int>(pos);
      ++pos;
      NodePtr rhs = parse_term();
      lhs = make_node(c == '+' ? Kind::Add : Kind::Sub, std::move(lhs),
                      std::move(rhs), {at, at + 1});
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      const int at = static_cast<int>(pos);
      ++pos;
      NodePtr rhs = parse_factor();
      lhs = make_node(c == '*' ? Kind::Mul : Kind::Div, std::move(lhs),
                      std::move(rhs), {at, at + 1});
    }
  }

  NodePtr parse_factor() {
    if (peek() == '-') {
      const int at = static_cast<int>(pos);
      ++pos;
      return make_node(Kind::Neg, parse_factor(), nullptr, {at, at + 1});
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    const char c = peek();
    const int at = static_cast<int>(pos);
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    fail("unexpected character", "number, variable, function, '(', '-'");
  }

  NodePtr parse_number() {
    const int at = static_cast<int>(pos);
    const char* start = text.data() + pos;
    char* end = nullptr;
    errno = 0;
    // strtod reads at most to the end of the view; the view is backed by a
    // NUL-terminated string (see parse_field).
    const double value = std::strtod(start, &end);
    if (end == start || errno == ERANGE || !std::isfinite(value))
      fail("malformed number", "number");
    if (value < 0) fail("unexpected sign in number", "number");
    pos += static_cast<size_t>(end - start);
    return make_number(value, {at, static_cast<int>(pos)});
  }

  NodePtr parse_identifier() {
    const int at = static_cast<int>(pos);
    size_t end = pos;
    while (end < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[end])) ||
            text[end] == '_'))
      ++end;
    const std::string name(text.substr(pos, end - pos));
    pos = end;
    const SourceSpan span{at, static_cast<int>(end)};

    if (name == "x1") return make_var(FieldVar::x1, span);
    if (name == "x2") return make_var(FieldVar::x2, span);
    if (name == "x3") return make_var(FieldVar::x3, span);
    if (name == "u") return make_var(FieldVar::u, span);
    if (name == "v") return make_var(FieldVar::v, span);

    Func func;
    if (name == "sin") func = Func::Sin;
    else if (name == "cos") func = Func::Cos;
    else if (name == "exp") func = Func::Exp;
    else if (name == "sqrt") func = Func::Sqrt;
    else if (name == "abs") func = Func::Abs;
    else
      throw ExprParseError("unknown identifier '" + name + "' at offset " +
                               std::to_string(at),
                           at, "x1, x2, x3, u, v, sin, cos, exp, sqrt, abs");
    expect('(');
    NodePtr arg = parse_expr();
    expect(')');
    return make_call(func, std::move(arg), span);
  }
};

}  // namespace detail

using detail::ExprNode;
using detail::Func;
using detail::Kind;
using detail::NodePtr;

FieldExpr parse_field(std::string_view text) {
  const std::string owned(text);  // guarantees NUL termination for strtod
  detail::Parser p{owned};
  NodePtr root = p.parse_expr();
  if (!p.at_end()) p.fail("trailing input", "end of input, operator");
  return FieldExpr(std::move(root));
}

namespace {

int precedence(const ExprNode* n) {
  switch (n->kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    default: return 4;
  }
}

void print_node(const ExprNode* n, std::string& out) {
  auto child = [&](const ExprNode* c, bool need_parens) {
    if (need_parens) out += '(';
    print_node(c, out);
    if (need_parens) out += ')';
  };
  switch (n->kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n->number);
      out += buf;
      break;
    }
    case Kind::Var:
      out += to_string(n->var);
      break;
    case Kind::Neg:
      out += '-';
      child(n->lhs.get(), precedence(n->lhs.get()) < 3);
      break;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      const int p = precedence(n);
      // equal-precedence right children keep parens so the printed text
      // reparses to the identical (left-associated) tree shape
      const bool right_assoc_parens = precedence(n->rhs.get()) <= p;
      child(n->lhs.get(), precedence(n->lhs.get()) < p);
      out += n->kind == Kind::Add ? '+'
             : n->kind == Kind::Sub ? '-'
             : n->kind == Kind::Mul ? '*'
                                    : '/';
      child(n->rhs.get(), right_assoc_parens);
      break;
    }
    case Kind::Call: {
      switch (n->func) {
        case Func::Sin: out += "sin"; break;
        case Func::Cos: out += "cos"; break;
        case Func::Exp: out += "exp"; break;
        case Func::Sqrt: out += "sqrt"; break;
        case Func::Abs: out += "abs"; break;
        case Func::Sign: out += "sign"; break;
      }
      out += '(';
      print_node(n->lhs.get(), out);
      out += ')';
      break;
    }
  }
}

double eval_node(const ExprNode* n, const Bindings& b) {
  auto check = [&](double x) {
    if (!std::isfinite(x))
      throw EvalError("non-finite result", n->span);
    return x;
  };
  switch (n->kind) {
    case Kind::Number:
      return n->number;
    case Kind::Var: {
      const auto value = b.get(n->var);
      if (!value)
        throw EvalError(std::string("unbound variable '") + to_string(n->var) +
                            "'",
                        n->span);
      return *value;
    }
    case Kind::Neg:
      return -eval_node(n->lhs.get(), b);
    case Kind::Add:
      return check(eval_node(n->lhs.get(), b) + eval_node(n->rhs.get(), b));
    case Kind::Sub:
      return check(eval_node(n->lhs.get(), b) - eval_node(n->rhs.get(), b));
    case Kind::Mul:
      return check(eval_node(n->lhs.get(), b) * eval_node(n->rhs.get(), b));
    case Kind::Div: {
      const double denom = eval_node(n->rhs.get(), b);
      if (denom == 0.0) throw EvalError("division by zero", n->span);
      return check(eval_node(n->lhs.get(), b) / denom);
    }
    case Kind::Call: {
      const double x = eval_node(n->lhs.get(), b);
      switch (n->func) {
        case Func::Sin: return check(std::sin(x));
        case Func::Cos: return check(std::cos(x));
        case Func::Exp: return check(std::exp(x));
        case Func::Sqrt:
          if (x < 0.0)
            throw EvalError("sqrt of negative value", n->span);
          return std::sqrt(x);
        case Func::Abs: return std::fabs(x);
        case Func::Sign: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
      }
      break;
    }
  }
  throw EvalError("malformed expression tree", n->span);
}

NodePtr diff_node(const NodePtr& n, FieldVar var) {
  using namespace detail;
  switch (n->kind) {
    case Kind::Number:
      return make_number(0.0);
    case Kind::Var:
      return make_number(n->var == var ? 1.0 : 0.0);
    case Kind::Neg:
      return s_neg(diff_node(n->lhs, var));
    case Kind::Add:
      return s_add(diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Kind::Sub:
      return s_sub(diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Kind::Mul:
      return s_add(s_mul(diff_node(n->lhs, var), n->rhs),
                   s_mul(n->lhs, diff_node(n->rhs, var)));
    case Kind::Div:
      return s_div(s_sub(s_mul(diff_node(n->lhs, var), n->rhs),
                         s_mul(n->lhs, diff_node(n->rhs, var))),
                   s_mul(n->rhs, n->rhs));
    case Kind::Call: {
      const NodePtr df = diff_node(n->lhs, var);
      switch (n->func) {
        case Func::Sin:
          return s_mul(make_call(Func::Cos, n->lhs), df);
        case Func::Cos:
          return s_neg(s_mul(make_call(Func::Sin, n->lhs), df));
        case Func::Exp:
          return s_mul(make_call(Func::Exp, n->lhs), df);
        case Func::Sqrt:
          return s_div(df, s_mul(make_number(2.0), make_call(Func::Sqrt, n->lhs)));
        case Func::Abs:
          // sign(0) = 0, so d abs / d var is defined as 0 at the kink.
          return s_mul(make_call(Func::Sign, n->lhs), df);
        case Func::Sign:
          return make_number(0.0);
      }
      break;
    }
  }
  return make_number(0.0);
}

NodePtr subst_node(const NodePtr& n,
                   const std::map<FieldVar, FieldExpr>& repl) {
  using namespace detail;
  switch (n->kind) {
    case Kind::Number:
      return n;
    case Kind::Var: {
      auto it = repl.find(n->var);
      return it == repl.end() ? n : it->second.shared();
    }
    case Kind::Neg:
      return make_node(Kind::Neg, subst_node(n->lhs, repl), nullptr, n->span);
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div:
      return make_node(n->kind, subst_node(n->lhs, repl),
                       subst_node(n->rhs, repl), n->span);
    case Kind::Call:
      return make_call(n->func, subst_node(n->lhs, repl), n->span);
  }
  return n;
}

void collect_vars(const ExprNode* n, std::set<FieldVar>& out) {
  if (!n) return;
  if (n->kind == Kind::Var) out.insert(n->var);
  collect_vars(n->lhs.get(), out);
  collect_vars(n->rhs.get(), out);
}

bool equal_nodes(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Number: return a->number == b->number;
    case Kind::Var: return a->var == b->var;
    case Kind::Call:
      return a->func == b->func && equal_nodes(a->lhs.get(), b->lhs.get());
    default:
      return equal_nodes(a->lhs.get(), b->lhs.get()) &&
             equal_nodes(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

std::string to_string(const FieldExpr& expr) {
  std::string out;
  print_node(expr.node(), out);
  return out;
}

double evaluate(const FieldExpr& expr, const Bindings& bindings) {
  return eval_node(expr.node(), bindings);
}

FieldExpr differentiate(const FieldExpr& expr, FieldVar var) {
  return FieldExpr(diff_node(expr.shared(), var));
}

FieldExpr substitute(const FieldExpr& expr,
                     const std::map<FieldVar, FieldExpr>& replacements) {
  return FieldExpr(subst_node(expr.shared(), replacements));
}

std::set<FieldVar> variables(const FieldExpr& expr) {
  std::set<FieldVar> out;
  collect_vars(expr.node(), out);
  return out;
}

FieldExpr constant_expr(double value) {
  return FieldExpr(detail::make_number(value));
}

bool structurally_equal(const FieldExpr& a, const FieldExpr& b) {
  return equal_nodes(a.node(), b.node());
}

}  // namespace ltl
