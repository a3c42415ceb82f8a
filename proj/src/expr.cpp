#include "setopt/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace setopt {

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Op;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0,
                  int index = 0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->value = value;
  n->index = index;
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, int n_vars) : text_(text), n_vars_(n_vars) {}

  NodePtr run() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError(ErrorCode::SyntaxError, pos_, "empty expression");
    }
    NodePtr n = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(ErrorCode::SyntaxError, pos_,
                       std::string("unexpected '") + text_[pos_] + "'");
    }
    return n;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(ErrorCode::SyntaxError, pos_, std::string("expected '") + c + "'");
    }
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = make_node(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_node(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_node(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    while (accept('^')) base = make_node(Op::Pow, base, nullptr, 0.0, parse_exponent());
    return base;
  }

  int parse_exponent() {
    const bool paren = accept('(');
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' ||
                                                  text_[pos_] == 'E'))) {
      throw ParseError(ErrorCode::SyntaxError, start, "exponent must be an integer literal");
    }
    int k = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, k);
    if (res.ec != std::errc()) {
      throw ParseError(ErrorCode::SyntaxError, start, "exponent out of range");
    }
    if (paren) expect(')');
    return sign * k;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError(ErrorCode::SyntaxError, pos_, "unexpected end of expression");
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(ErrorCode::SyntaxError, pos_, std::string("unexpected '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(ErrorCode::SyntaxError, start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError(ErrorCode::SyntaxError, start, "malformed exponent");
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      throw ParseError(ErrorCode::SyntaxError, start, "number out of range");
    }
    return make_node(Op::Const, nullptr, nullptr, v);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "sin" || name == "cos" || name == "exp") {
      expect('(');
      NodePtr arg = parse_sum();
      expect(')');
      const Op op = name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp;
      return make_node(op, arg);
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      long idx = 0;
      const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (res.ec != std::errc() || idx < 1 || idx > n_vars_) {
        throw ParseError(ErrorCode::VariableIndexOutOfRange, start,
                         std::string(name) + " with " + std::to_string(n_vars_) + " variable(s)");
      }
      return make_node(Op::Var, nullptr, nullptr, 0.0, static_cast<int>(idx - 1));
    }
    if (name == "abs" || name == "min" || name == "max") {
      throw ParseError(ErrorCode::UnknownIdentifier, start,
                       "nonsmooth primitive '" + std::string(name) + "' is not admitted");
    }
    throw ParseError(ErrorCode::UnknownIdentifier, start,
                     "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  int n_vars_;
  std::size_t pos_ = 0;
};

std::optional<AffineForm> affine_of(const Expression::Node& n, int n_vars) {
  auto constant = [&](double c) { return AffineForm{Vec::Zero(n_vars), c}; };
  auto is_const = [](const AffineForm& a) { return a.row.isZero(0.0); };
  switch (n.op) {
    case Op::Const:
      return constant(n.value);
    case Op::Var: {
      AffineForm a = constant(0.0);
      a.row[n.index] = 1.0;
      return a;
    }
    case Op::Add:
    case Op::Sub: {
      auto l = affine_of(*n.lhs, n_vars);
      auto r = affine_of(*n.rhs, n_vars);
      if (!l || !r) return std::nullopt;
      const double s = n.op == Op::Add ? 1.0 : -1.0;
      return AffineForm{l->row + s * r->row, l->offset + s * r->offset};
    }
    case Op::Neg: {
      auto l = affine_of(*n.lhs, n_vars);
      if (!l) return std::nullopt;
      return AffineForm{-l->row, -l->offset};
    }
    case Op::Mul: {
      auto l = affine_of(*n.lhs, n_vars);
      auto r = affine_of(*n.rhs, n_vars);
      if (!l || !r) return std::nullopt;
      if (is_const(*l)) return AffineForm{l->offset * r->row, l->offset * r->offset};
      if (is_const(*r)) return AffineForm{r->offset * l->row, r->offset * l->offset};
      return std::nullopt;
    }
    case Op::Div: {
      auto l = affine_of(*n.lhs, n_vars);
      auto r = affine_of(*n.rhs, n_vars);
      if (!l || !r || !is_const(*r)) return std::nullopt;
      if (std::abs(r->offset) <= Expression::kDomainGuard) return std::nullopt;
      return AffineForm{l->row / r->offset, l->offset / r->offset};
    }
    case Op::Pow: {
      if (n.index == 0) return constant(1.0);
      auto b = affine_of(*n.lhs, n_vars);
      if (!b) return std::nullopt;
      if (n.index == 1) return b;
      if (!is_const(*b)) return std::nullopt;
      if (n.index < 0 && std::abs(b->offset) <= Expression::kDomainGuard) return std::nullopt;
      return constant(std::pow(b->offset, n.index));
    }
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: {
      auto a = affine_of(*n.lhs, n_vars);
      if (!a || !is_const(*a)) return std::nullopt;
      const double v = n.op == Op::Sin   ? std::sin(a->offset)
                       : n.op == Op::Cos ? std::cos(a->offset)
                                         : std::exp(a->offset);
      if (!std::isfinite(v)) return std::nullopt;
      return constant(v);
    }
  }
  return std::nullopt;
}

void print_node(const Expression::Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(n.value));
      if (std::signbit(n.value)) {
        out += "(-";
        out += buf;
        out += ')';
      } else {
        out += buf;
      }
      return;
    }
    case Op::Var:
      out += 'x';
      out += std::to_string(n.index + 1);
      return;
    case Op::Neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Op::Pow:
      out += '(';
      print_node(*n.lhs, out);
      out += '^';
      if (n.index < 0) {
        out += "(" + std::to_string(n.index) + ")";
      } else {
        out += std::to_string(n.index);
      }
      out += ')';
      return;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
      out += n.op == Op::Sin ? "sin(" : n.op == Op::Cos ? "cos(" : "exp(";
      print_node(*n.lhs, out);
      out += ')';
      return;
    default: {
      const char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
      out += '(';
      print_node(*n.lhs, out);
      out += ' ';
      out += sym;
      out += ' ';
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
  }
}

bool same_tree(const Expression::Node& a, const Expression::Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Const: return a.value == b.value;
    case Op::Var: return a.index == b.index;
    case Op::Pow: return a.index == b.index && same_tree(*a.lhs, *b.lhs);
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return same_tree(*a.lhs, *b.lhs);
    default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

[[noreturn]] void domain_error(const std::string& what) {
  throw Error(ErrorCode::DomainError, what);
}

double eval_value(const Expression::Node& n, const Vec& x) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x[n.index];
    case Op::Add: return eval_value(*n.lhs, x) + eval_value(*n.rhs, x);
    case Op::Sub: return eval_value(*n.lhs, x) - eval_value(*n.rhs, x);
    case Op::Mul: return eval_value(*n.lhs, x) * eval_value(*n.rhs, x);
    case Op::Div: {
      const double den = eval_value(*n.rhs, x);
      if (std::abs(den) <= Expression::kDomainGuard) domain_error("division by a value near zero");
      return eval_value(*n.lhs, x) / den;
    }
    case Op::Pow: {
      const double b = eval_value(*n.lhs, x);
      if (n.index < 0 && std::abs(b) <= Expression::kDomainGuard) {
        domain_error("negative power of a value near zero");
      }
      return std::pow(b, n.index);
    }
    case Op::Neg: return -eval_value(*n.lhs, x);
    case Op::Sin: return std::sin(eval_value(*n.lhs, x));
    case Op::Cos: return std::cos(eval_value(*n.lhs, x));
    case Op::Exp: return std::exp(eval_value(*n.lhs, x));
  }
  return 0.0;
}

// Vector-mode forward differentiation: value and full gradient in one pass.
struct Dual {
  double v;
  Vec g;
};

Dual eval_dual(const Expression::Node& n, const Vec& x) {
  const Eigen::Index dim = x.size();
  switch (n.op) {
    case Op::Const: return {n.value, Vec::Zero(dim)};
    case Op::Var: return {x[n.index], Vec::Unit(dim, n.index)};
    case Op::Add: {
      Dual a = eval_dual(*n.lhs, x), b = eval_dual(*n.rhs, x);
      return {a.v + b.v, a.g + b.g};
    }
    case Op::Sub: {
      Dual a = eval_dual(*n.lhs, x), b = eval_dual(*n.rhs, x);
      return {a.v - b.v, a.g - b.g};
    }
    case Op::Mul: {
      Dual a = eval_dual(*n.lhs, x), b = eval_dual(*n.rhs, x);
      return {a.v * b.v, b.v * a.g + a.v * b.g};
    }
    case Op::Div: {
      Dual a = eval_dual(*n.lhs, x), b = eval_dual(*n.rhs, x);
      if (std::abs(b.v) <= Expression::kDomainGuard) domain_error("division by a value near zero");
      return {a.v / b.v, (a.g * b.v - a.v * b.g) / (b.v * b.v)};
    }
    case Op::Pow: {
      Dual b = eval_dual(*n.lhs, x);
      const int k = n.index;
      if (k == 0) return {1.0, Vec::Zero(dim)};
      if (k < 0 && std::abs(b.v) <= Expression::kDomainGuard) {
        domain_error("negative power of a value near zero");
      }
      return {std::pow(b.v, k), (k * std::pow(b.v, k - 1)) * b.g};
    }
    case Op::Neg: {
      Dual a = eval_dual(*n.lhs, x);
      return {-a.v, -a.g};
    }
    case Op::Sin: {
      Dual a = eval_dual(*n.lhs, x);
      return {std::sin(a.v), std::cos(a.v) * a.g};
    }
    case Op::Cos: {
      Dual a = eval_dual(*n.lhs, x);
      return {std::cos(a.v), -std::sin(a.v) * a.g};
    }
    case Op::Exp: {
      Dual a = eval_dual(*n.lhs, x);
      const double ev = std::exp(a.v);
      return {ev, ev * a.g};
    }
  }
  return {0.0, Vec::Zero(dim)};
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, int n_vars)
    : root_(std::move(root)), n_vars_(n_vars), affine_(affine_of(*root_, n_vars)) {}

Expression Expression::parse(std::string_view text, int n_vars) {
  if (n_vars < 0) throw Error(ErrorCode::InvalidArgument, "n_vars must be nonnegative");
  return Expression(Parser(text, n_vars).run(), n_vars);
}

Expression Expression::constant(double c, int n_vars) {
  return Expression(make_node(Op::Const, nullptr, nullptr, c), n_vars);
}

Expression Expression::variable(int index, int n_vars) {
  if (index < 0 || index >= n_vars) {
    throw Error(ErrorCode::VariableIndexOutOfRange, "variable index " + std::to_string(index));
  }
  return Expression(make_node(Op::Var, nullptr, nullptr, 0.0, index), n_vars);
}

std::string Expression::print() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool Expression::structurally_equal(const Expression& other) const {
  return n_vars_ == other.n_vars_ && same_tree(*root_, *other.root_);
}

double Expression::evaluate(const Vec& x) const {
  require_dim(x, n_vars_, "expression argument");
  const double v = affine_ ? affine_->row.dot(x) + affine_->offset : eval_value(*root_, x);
  if (!std::isfinite(v)) domain_error("non-finite value");
  return v;
}

ValueGradient Expression::eval_with_gradient(const Vec& x) const {
  require_dim(x, n_vars_, "expression argument");
  ValueGradient out;
  if (affine_) {
    out.value = affine_->row.dot(x) + affine_->offset;
    out.gradient = affine_->row;
  } else {
    Dual d = eval_dual(*root_, x);
    out.value = d.v;
    out.gradient = std::move(d.g);
  }
  if (!std::isfinite(out.value) || !out.gradient.allFinite()) domain_error("non-finite value");
  return out;
}

namespace {
void require_same_vars(const Expression& a, const Expression& b) {
  if (a.n_vars() != b.n_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "expressions over different variable counts");
  }
}
}  // namespace

Expression operator+(const Expression& a, const Expression& b) {
  require_same_vars(a, b);
  return Expression(make_node(Op::Add, a.root_, b.root_), a.n_vars_);
}

Expression operator-(const Expression& a, const Expression& b) {
  require_same_vars(a, b);
  return Expression(make_node(Op::Sub, a.root_, b.root_), a.n_vars_);
}

Expression operator*(const Expression& a, const Expression& b) {
  require_same_vars(a, b);
  return Expression(make_node(Op::Mul, a.root_, b.root_), a.n_vars_);
}

Expression operator-(const Expression& a) {
  return Expression(make_node(Op::Neg, a.root_), a.n_vars_);
}

}  // namespace setopt
