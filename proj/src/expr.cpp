#include "plastiflow/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>

#include "plastiflow/errors.hpp"

namespace plastiflow::expr {

namespace {

Expr make(Kind k, std::vector<Expr> args = {}, double value = 0, Func f = Func::Sin) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = value;
  n->func = f;
  return n;
}

Expr num(double v) { return make(Kind::Num, {}, v); }
Expr var() { return make(Kind::Var); }
Expr call(Func f, Expr a) { return make(Kind::Call, {std::move(a)}, 0, f); }

struct FuncName {
  const char* name;
  Func func;
  int arity;
};
constexpr FuncName kFuncs[] = {{"sin", Func::Sin, 1},   {"cos", Func::Cos, 1},  {"tan", Func::Tan, 1},
                               {"exp", Func::Exp, 1},   {"ln", Func::Ln, 1},    {"sqrt", Func::Sqrt, 1},
                               {"atan", Func::Atan, 1}, {"dn", Func::Dn, 2}};

const char* func_name(Func f) {
  for (const auto& fn : kFuncs)
    if (fn.func == f) return fn.name;
  return "?";
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character", "operator or end of input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
    throw ParseError(msg, pos_, expected);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail("missing token", std::string("'") + c + "'");
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::Add, {lhs, term()});
      else if (accept('-')) lhs = make(Kind::Sub, {lhs, term()});
      else return lhs;
    }
  }
  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::Mul, {lhs, unary()});
      else if (accept('/')) lhs = make(Kind::Div, {lhs, unary()});
      else return lhs;
    }
  }
  Expr unary() {
    if (accept('-')) return make(Kind::Neg, {unary()});
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (accept('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input", "number, 't', function or '('");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("malformed number", "number");
      pos_ = ptr - s_.data();
      return num(v);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "t") return var();
      if (id == "pi") return make(Kind::Pi);
      for (const auto& fn : kFuncs) {
        if (id != fn.name) continue;
        expect('(');
        std::vector<Expr> args{expression()};
        for (int i = 1; i < fn.arity; ++i) {
          expect(',');
          std::size_t arg_pos = pos_;
          args.push_back(expression());
          if (fn.func == Func::Dn && args.back()->kind != Kind::Num) {
            pos_ = arg_pos;
            fail("dn modulus must be a numeric literal", "number");
          }
        }
        expect(')');
        return make(Kind::Call, std::move(args), 0, fn.func);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'", "'t', 'pi' or a function name");
    }
    fail("unexpected character", "number, 't', function or '('");
  }
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

bool is_num(const Expr& e) { return e->kind == Kind::Num; }
bool is_num(const Expr& e, double v) { return e->kind == Kind::Num && e->value == v; }

bool depends_on_t(const Expr& e) {
  if (e->kind == Kind::Var) return true;
  for (const auto& a : e->args)
    if (depends_on_t(a)) return true;
  return false;
}

// Builders with constant folding.
Expr neg(Expr a) {
  if (is_num(a)) return num(-a->value);
  if (a->kind == Kind::Neg) return a->args[0];
  return make(Kind::Neg, {a});
}
Expr add(Expr a, Expr b) {
  if (is_num(a) && is_num(b)) return num(a->value + b->value);
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  return make(Kind::Add, {a, b});
}
Expr sub(Expr a, Expr b) {
  if (is_num(a) && is_num(b)) return num(a->value - b->value);
  if (is_num(b, 0)) return a;
  if (is_num(a, 0)) return neg(b);
  return make(Kind::Sub, {a, b});
}
Expr mul(Expr a, Expr b) {
  if (is_num(a) && is_num(b)) return num(a->value * b->value);
  if (is_num(a, 0) || is_num(b, 0)) return num(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  if (is_num(a, -1)) return neg(b);
  if (is_num(b, -1)) return neg(a);
  return make(Kind::Mul, {a, b});
}
Expr divide(Expr a, Expr b) {
  if (is_num(a) && is_num(b) && b->value != 0) return num(a->value / b->value);
  if (is_num(a, 0)) return num(0);
  if (is_num(b, 1)) return a;
  return make(Kind::Div, {a, b});
}
Expr pow(Expr a, Expr b) {
  if (is_num(b, 1)) return a;
  if (is_num(b, 0)) return num(1);
  if (is_num(a) && is_num(b)) {
    double v = std::pow(a->value, b->value);
    if (std::isfinite(v)) return num(v);
  }
  return make(Kind::Pow, {a, b});
}

int prec(const Expr& e) {
  switch (e->kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Num: return e->value < 0 ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e->kind) {
    case Kind::Num: out += format_number(e->value); return;
    case Kind::Pi: out += "pi"; return;
    case Kind::Var: out += "t"; return;
    case Kind::Neg:
      out += '-';
      print_wrapped(e->args[0], prec(e->args[0]) < 3, out);
      return;
    case Kind::Add:
    case Kind::Sub:
      print_wrapped(e->args[0], false, out);
      out += e->kind == Kind::Add ? '+' : '-';
      print_wrapped(e->args[1], prec(e->args[1]) <= 1, out);
      return;
    case Kind::Mul:
    case Kind::Div:
      print_wrapped(e->args[0], prec(e->args[0]) < 2, out);
      out += e->kind == Kind::Mul ? '*' : '/';
      print_wrapped(e->args[1], prec(e->args[1]) <= 2, out);
      return;
    case Kind::Pow:
      print_wrapped(e->args[0], prec(e->args[0]) <= 4, out);
      out += '^';
      print_wrapped(e->args[1], prec(e->args[1]) < 3, out);
      return;
    case Kind::Call:
      out += func_name(e->func);
      out += '(';
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) out += ',';
        print(e->args[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

double eval(const Expr& e, double t) {
  switch (e->kind) {
    case Kind::Num: return e->value;
    case Kind::Pi: return std::numbers::pi;
    case Kind::Var: return t;
    case Kind::Neg: return -eval(e->args[0], t);
    case Kind::Add: return checked(eval(e->args[0], t) + eval(e->args[1], t), "+");
    case Kind::Sub: return checked(eval(e->args[0], t) - eval(e->args[1], t), "-");
    case Kind::Mul: return checked(eval(e->args[0], t) * eval(e->args[1], t), "*");
    case Kind::Div: {
      double d = eval(e->args[1], t);
      if (d == 0) throw EvalError("division by zero");
      return checked(eval(e->args[0], t) / d, "/");
    }
    case Kind::Pow: {
      double b = eval(e->args[0], t), x = eval(e->args[1], t);
      if (b < 0 && x != std::floor(x)) throw EvalError("negative base with non-integer exponent");
      if (b == 0 && x < 0) throw EvalError("division by zero in ^");
      return checked(std::pow(b, x), "^");
    }
    case Kind::Call: {
      double a = eval(e->args[0], t);
      switch (e->func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return checked(std::tan(a), "tan");
        case Func::Exp: return checked(std::exp(a), "exp");
        case Func::Ln:
          if (a <= 0) throw EvalError("ln of non-positive argument");
          return std::log(a);
        case Func::Sqrt:
          if (a < 0) throw EvalError("sqrt of negative argument");
          return std::sqrt(a);
        case Func::Atan: return std::atan(a);
        case Func::Dn: return jacobi_dn(a, e->args[1]->value);
      }
    }
  }
  throw EvalError("malformed expression");
}

Expr differentiate(const Expr& e) {
  switch (e->kind) {
    case Kind::Num:
    case Kind::Pi: return num(0);
    case Kind::Var: return num(1);
    case Kind::Neg: return neg(differentiate(e->args[0]));
    case Kind::Add: return add(differentiate(e->args[0]), differentiate(e->args[1]));
    case Kind::Sub: return sub(differentiate(e->args[0]), differentiate(e->args[1]));
    case Kind::Mul: {
      const Expr &a = e->args[0], &b = e->args[1];
      return add(mul(differentiate(a), b), mul(a, differentiate(b)));
    }
    case Kind::Div: {
      const Expr &a = e->args[0], &b = e->args[1];
      return divide(sub(mul(differentiate(a), b), mul(a, differentiate(b))), pow(b, num(2)));
    }
    case Kind::Pow: {
      const Expr &a = e->args[0], &b = e->args[1];
      if (!depends_on_t(b))
        return mul(mul(b, pow(a, sub(b, num(1)))), differentiate(a));
      // d(a^b) = a^b (b' ln a + b a'/a)
      return mul(e, add(mul(differentiate(b), call(Func::Ln, a)),
                        divide(mul(b, differentiate(a)), a)));
    }
    case Kind::Call: {
      const Expr& a = e->args[0];
      Expr da = differentiate(a);
      switch (e->func) {
        case Func::Sin: return mul(call(Func::Cos, a), da);
        case Func::Cos: return neg(mul(call(Func::Sin, a), da));
        case Func::Tan: return divide(da, pow(call(Func::Cos, a), num(2)));
        case Func::Exp: return mul(e, da);
        case Func::Ln: return divide(da, a);
        case Func::Sqrt: return divide(da, mul(num(2), e));
        case Func::Atan: return divide(da, add(num(1), pow(a, num(2))));
        case Func::Dn: throw UnsupportedNode("no symbolic derivative for dn");
      }
    }
  }
  throw EvalError("malformed expression");
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

double jacobi_dn(double u, double m) {
  if (!(m >= 0 && m <= 1)) throw EvalError("dn modulus outside [0, 1]");
  if (m == 0) return 1.0;
  if (m == 1) return 1.0 / std::cosh(u);
  constexpr int kMax = 64;
  double a[kMax], c[kMax];
  a[0] = 1.0;
  c[0] = m;
  double b = std::sqrt(1.0 - m * m);
  int n = 0;
  while (std::fabs(c[n]) > 1e-15 * a[n] && n < kMax - 1) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  double phi1 = phi;
  for (int j = n; j >= 1; --j) {
    phi1 = phi;
    phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  }
  return std::cos(phi) / std::cos(phi1 - phi);
}

FuncSlot::FuncSlot(const std::string& text) : FuncSlot(parse(text)) { text_ = text; }

FuncSlot::FuncSlot(Expr e) : text_(to_string(e)), expr_(std::move(e)) {
  try {
    d1_ = differentiate(expr_);
    d2_ = differentiate(d1_);
  } catch (const UnsupportedNode&) {
  }
}

namespace {

template <class F>
double five_point(const F& f, double t) {
  double h = 1e-3 * std::max(1.0, std::fabs(t));
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

}  // namespace

double FuncSlot::d1(double t) const {
  if (d1_) return eval(d1_, t);
  return five_point([this](double s) { return eval(expr_, s); }, t);
}

double FuncSlot::d2(double t) const {
  if (d2_) return eval(d2_, t);
  return five_point([this](double s) { return d1(s); }, t);
}

}  // namespace plastiflow::expr
