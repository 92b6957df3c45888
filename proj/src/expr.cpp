#include "minsurf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "minsurf/errors.hpp"

namespace minsurf {

struct Expr::Node {
  ExprKind kind;
  Complex value{0.0};  // kConstant
  int exponent = 0;    // kIntPow
  Expr a, b;
};

namespace {

Complex pow_complex(Complex b, int e) {
  bool invert = e < 0;
  unsigned long n = invert ? -static_cast<long>(e) : e;
  Complex acc = 1.0;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return invert ? 1.0 / acc : acc;
}

}  // namespace

ExprKind Expr::kind() const { return node_->kind; }
Complex Expr::constant_value() const { return node_->value; }
int Expr::exponent() const { return node_->exponent; }

const Expr& Expr::child(int i) const { return i == 0 ? node_->a : node_->b; }

int Expr::arity() const {
  switch (node_->kind) {
    case ExprKind::kConstant:
    case ExprKind::kVariable:
      return 0;
    case ExprKind::kNegate:
    case ExprKind::kIntPow:
    case ExprKind::kExp:
    case ExprKind::kSqrt:
      return 1;
    default:
      return 2;
  }
}

bool Expr::same_tree(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case ExprKind::kConstant:
      return constant_value() == other.constant_value();
    case ExprKind::kVariable:
      return true;
    case ExprKind::kIntPow:
      if (exponent() != other.exponent()) return false;
      return child(0).same_tree(other.child(0));
    default:
      for (int i = 0; i < arity(); ++i)
        if (!child(i).same_tree(other.child(i))) return false;
      return true;
  }
}

Expr Expr::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kConstant;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kVariable;
  return Expr(std::move(n));
}

namespace {
bool is_const(const Expr& e, Complex* out = nullptr) {
  if (e.kind() != ExprKind::kConstant) return false;
  if (out) *out = e.constant_value();
  return true;
}
}  // namespace

Expr Expr::negate(Expr a) {
  Complex ca;
  if (is_const(a, &ca)) return constant(-ca);
  if (a.kind() == ExprKind::kNegate) return a.child(0);
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kNegate;
  n->a = std::move(a);
  return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) {
  Complex ca, cb;
  if (is_const(a, &ca) && is_const(b, &cb)) return constant(ca + cb);
  if (is_const(a, &ca) && ca == Complex(0.0)) return b;
  if (is_const(b, &cb) && cb == Complex(0.0)) return a;
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kAdd;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::sub(Expr a, Expr b) {
  Complex ca, cb;
  if (is_const(a, &ca) && is_const(b, &cb)) return constant(ca - cb);
  if (is_const(b, &cb) && cb == Complex(0.0)) return a;
  if (is_const(a, &ca) && ca == Complex(0.0)) return negate(std::move(b));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kSub;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::mul(Expr a, Expr b) {
  Complex ca, cb;
  if (is_const(a, &ca) && is_const(b, &cb)) return constant(ca * cb);
  if (is_const(a, &ca)) {
    if (ca == Complex(0.0)) return constant(0.0);
    if (ca == Complex(1.0)) return b;
  }
  if (is_const(b, &cb)) {
    if (cb == Complex(0.0)) return constant(0.0);
    if (cb == Complex(1.0)) return a;
  }
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kMul;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::div(Expr a, Expr b) {
  Complex ca, cb;
  if (is_const(b, &cb) && cb != Complex(0.0)) {
    if (is_const(a, &ca)) return constant(ca / cb);
    if (cb == Complex(1.0)) return a;
  }
  if (is_const(a, &ca) && ca == Complex(0.0)) return constant(0.0);
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kDiv;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  Complex cb;
  if (is_const(base, &cb) && !(cb == Complex(0.0) && exponent < 0))
    return constant(pow_complex(cb, exponent));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kIntPow;
  n->exponent = exponent;
  n->a = std::move(base);
  return Expr(std::move(n));
}

Expr Expr::exp(Expr a) {
  Complex ca;
  if (is_const(a, &ca)) return constant(std::exp(ca));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kExp;
  n->a = std::move(a);
  return Expr(std::move(n));
}

Expr Expr::sqrt(Expr a) {
  Complex ca;
  if (is_const(a, &ca)) return constant(sqrt_anchor(ca));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kSqrt;
  n->a = std::move(a);
  return Expr(std::move(n));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  int peek() {
    skip_ws();
    return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1;
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+'))
        e = Expr::add(std::move(e), term());
      else if (eat('-'))
        e = Expr::sub(std::move(e), term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*'))
        e = Expr::mul(std::move(e), factor());
      else if (eat('/'))
        e = Expr::div(std::move(e), factor());
      else
        return e;
    }
  }

  Expr factor() {
    Expr e = atom();
    if (eat('^')) return Expr::pow(std::move(e), signed_int());
    return e;
  }

  int signed_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    return std::atoi(std::string(text_.substr(start, pos_ - start)).c_str());
  }

  Expr atom() {
    int c = peek();
    if (c == '-') {
      ++pos_;
      return Expr::negate(atom());
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '.' || std::isdigit(c)) return number();
    if (std::isalpha(c)) return identifier();
    fail("expected a number, 'z', 'i', '(' or a function");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        pos_ = mark;  // the 'e' was not an exponent
      else
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
    }
    std::string lit(text_.substr(start, pos_ - start));
    if (lit == ".") {
      pos_ = start;
      fail("malformed number");
    }
    char* end = nullptr;
    double v = std::strtod(lit.c_str(), &end);
    if (end != lit.c_str() + lit.size()) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return Expr::constant(Complex(0.0, v));
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "z") return Expr::variable();
    if (name == "i") return Expr::constant(Complex(0.0, 1.0));
    if (name == "exp" || name == "sqrt") {
      if (!eat('(')) fail("expected '(' after function name");
      Expr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return name == "exp" ? Expr::exp(std::move(arg)) : Expr::sqrt(std::move(arg));
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

Complex parse_complex(std::string_view text) {
  Expr e = parse_expr(text);
  if (e.kind() != ExprKind::kConstant)
    throw ParseError("expected a constant expression", 0);
  return e.constant_value();
}

// --------------------------------------------------------------- printing

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Precedence levels: sum 1, product 2, power 3, atom 4.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kAdd:
    case ExprKind::kSub:
      return 1;
    case ExprKind::kMul:
    case ExprKind::kDiv:
      return 2;
    case ExprKind::kIntPow:
      return 3;
    default:
      return 4;
  }
}

void print_rec(const Expr& e, int min_prec, std::string& out);

void print_constant(Complex c, std::string& out) {
  double re = c.real(), im = c.imag();
  if (im == 0.0) {
    if (re < 0.0) out += "-" + fmt_double(-re);
    else out += fmt_double(re);
    return;
  }
  if (re == 0.0) {
    if (im == 1.0) { out += "i"; return; }
    if (im == -1.0) { out += "-i"; return; }
    if (im < 0.0) out += "-" + fmt_double(-im) + "i";
    else out += fmt_double(im) + "i";
    return;
  }
  // Composite constants print as a parenthesized sum; the parser folds the
  // sum back into a single constant node.
  out += "(";
  print_constant(Complex(re, 0.0), out);
  if (im > 0.0) {
    out += "+";
    print_constant(Complex(0.0, im), out);
  } else {
    out += "-";
    print_constant(Complex(0.0, -im), out);
  }
  out += ")";
}

void print_rec(const Expr& e, int min_prec, std::string& out) {
  int prec = precedence(e);
  bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (e.kind()) {
    case ExprKind::kConstant:
      print_constant(e.constant_value(), out);
      break;
    case ExprKind::kVariable:
      out += "z";
      break;
    case ExprKind::kNegate:
      out += "-";
      print_rec(e.child(0), 4, out);
      break;
    case ExprKind::kAdd:
      print_rec(e.child(0), 1, out);
      out += " + ";
      print_rec(e.child(1), 2, out);
      break;
    case ExprKind::kSub:
      print_rec(e.child(0), 1, out);
      out += " - ";
      print_rec(e.child(1), 2, out);
      break;
    case ExprKind::kMul:
      print_rec(e.child(0), 2, out);
      out += "*";
      print_rec(e.child(1), 3, out);
      break;
    case ExprKind::kDiv:
      print_rec(e.child(0), 2, out);
      out += "/";
      print_rec(e.child(1), 3, out);
      break;
    case ExprKind::kIntPow:
      print_rec(e.child(0), 4, out);
      out += "^";
      out += std::to_string(e.exponent());
      break;
    case ExprKind::kExp:
      out += "exp(";
      print_rec(e.child(0), 1, out);
      out += ")";
      break;
    case ExprKind::kSqrt:
      out += "sqrt(";
      print_rec(e.child(0), 1, out);
      out += ")";
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_rec(e, 1, out);
  return out;
}

// ------------------------------------------------------- calculus and eval

Expr differentiate(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kConstant:
      return Expr::constant(0.0);
    case ExprKind::kVariable:
      return Expr::constant(1.0);
    case ExprKind::kNegate:
      return Expr::negate(differentiate(e.child(0)));
    case ExprKind::kAdd:
      return Expr::add(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::kSub:
      return Expr::sub(differentiate(e.child(0)), differentiate(e.child(1)));
    case ExprKind::kMul:
      return Expr::add(Expr::mul(differentiate(e.child(0)), e.child(1)),
                       Expr::mul(e.child(0), differentiate(e.child(1))));
    case ExprKind::kDiv:
      return Expr::div(
          Expr::sub(Expr::mul(differentiate(e.child(0)), e.child(1)),
                    Expr::mul(e.child(0), differentiate(e.child(1)))),
          Expr::pow(e.child(1), 2));
    case ExprKind::kIntPow:
      return Expr::mul(
          Expr::mul(Expr::constant(static_cast<double>(e.exponent())),
                    Expr::pow(e.child(0), e.exponent() - 1)),
          differentiate(e.child(0)));
    case ExprKind::kExp:
      return Expr::mul(Expr::exp(e.child(0)), differentiate(e.child(0)));
    case ExprKind::kSqrt:
      return Expr::div(differentiate(e.child(0)),
                       Expr::mul(Expr::constant(2.0), Expr::sqrt(e.child(0))));
  }
  throw NumericError("unreachable expression kind");
}

Complex eval(const Expr& e, Complex z) {
  switch (e.kind()) {
    case ExprKind::kConstant:
      return e.constant_value();
    case ExprKind::kVariable:
      return z;
    case ExprKind::kNegate:
      return -eval(e.child(0), z);
    case ExprKind::kAdd:
      return eval(e.child(0), z) + eval(e.child(1), z);
    case ExprKind::kSub:
      return eval(e.child(0), z) - eval(e.child(1), z);
    case ExprKind::kMul:
      return eval(e.child(0), z) * eval(e.child(1), z);
    case ExprKind::kDiv: {
      Complex den = eval(e.child(1), z);
      if (den == Complex(0.0)) throw NumericError("pole at evaluation point");
      return eval(e.child(0), z) / den;
    }
    case ExprKind::kIntPow: {
      Complex b = eval(e.child(0), z);
      if (b == Complex(0.0) && e.exponent() < 0)
        throw NumericError("pole at evaluation point");
      return pow_complex(b, e.exponent());
    }
    case ExprKind::kExp:
      return std::exp(eval(e.child(0), z));
    case ExprKind::kSqrt: {
      Complex a = eval(e.child(0), z);
      if (a == Complex(0.0))
        throw NumericError("branch point at evaluation point");
      return sqrt_anchor(a);
    }
  }
  throw NumericError("unreachable expression kind");
}

LaurentSeries expand(const Expr& e, Complex p, int order) {
  switch (e.kind()) {
    case ExprKind::kConstant:
      return LaurentSeries::constant(p, e.constant_value(), order);
    case ExprKind::kVariable: {
      std::vector<Complex> c(std::max(order, 2), Complex(0.0));
      c[0] = p;
      c[1] = 1.0;
      return LaurentSeries(p, 0, std::move(c));
    }
    case ExprKind::kNegate:
      return -expand(e.child(0), p, order);
    case ExprKind::kAdd:
      return expand(e.child(0), p, order) + expand(e.child(1), p, order);
    case ExprKind::kSub:
      return expand(e.child(0), p, order) - expand(e.child(1), p, order);
    case ExprKind::kMul:
      return expand(e.child(0), p, order) * expand(e.child(1), p, order);
    case ExprKind::kDiv:
      return expand(e.child(0), p, order) / expand(e.child(1), p, order);
    case ExprKind::kIntPow:
      return pow_int(expand(e.child(0), p, order), e.exponent());
    case ExprKind::kExp:
      return exp_series(expand(e.child(0), p, order));
    case ExprKind::kSqrt: {
      LaurentSeries s = expand(e.child(0), p, order);
      if (s.declared_zero() || s.valuation() != 0)
        throw NumericError("branch point of sqrt at the expansion point");
      return sqrt_series(s);
    }
  }
  throw NumericError("unreachable expression kind");
}

}  // namespace minsurf
