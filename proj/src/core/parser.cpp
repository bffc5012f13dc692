// Text form of expression trees: recursive-descent parser and the printer
// that inverts it. print -> parse is structurally exact (constants render
// with 17 significant digits and unary minus folds into constants on both
// sides).
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/expr.hpp"

namespace merodiff {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  double num = 0.0;
  bool num_imag = false;
  std::string ident;
  std::size_t tok_pos = 0;

  explicit Lexer(const std::string& t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_pos); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    const char c = text[pos];
    switch (c) {
      case '+': tok = Tok::Plus; ++pos; return;
      case '-': tok = Tok::Minus; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '/': tok = Tok::Slash; ++pos; return;
      case '^': tok = Tok::Caret; ++pos; return;
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ident.clear();
      while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos])))
        ident += text[pos++];
      tok = Tok::Ident;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  void lex_number() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    // exponent only when 'e'/'E' is followed by digits (so "2*e" still works)
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t p = pos + 1;
      if (p < text.size() && (text[p] == '+' || text[p] == '-')) ++p;
      if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
        pos = p;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      }
    }
    num = std::stod(text.substr(start, pos - start));
    num_imag = false;
    // imaginary suffix: 'i' not followed by another identifier character
    if (pos < text.size() && text[pos] == 'i' &&
        (pos + 1 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;
      num_imag = true;
    }
    tok = Tok::Number;
  }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Expr run() {
    Expr e = parse_sum();
    if (lx_.tok != Tok::End) lx_.fail("unexpected trailing input");
    return e;
  }

 private:
  Lexer lx_;

  Expr parse_sum() {
    Expr e = parse_product();
    while (lx_.tok == Tok::Plus || lx_.tok == Tok::Minus) {
      const bool plus = lx_.tok == Tok::Plus;
      lx_.advance();
      Expr rhs = parse_product();
      e = plus ? make_add(e, rhs) : make_sub(e, rhs);
    }
    return e;
  }

  Expr parse_product() {
    Expr e = parse_unary();
    while (lx_.tok == Tok::Star || lx_.tok == Tok::Slash) {
      const bool mul = lx_.tok == Tok::Star;
      lx_.advance();
      Expr rhs = parse_unary();
      e = mul ? make_mul(e, rhs) : make_div(e, rhs);
    }
    return e;
  }

  Expr parse_unary() {
    if (lx_.tok == Tok::Plus) {
      lx_.advance();
      return parse_unary();
    }
    if (lx_.tok == Tok::Minus) {
      lx_.advance();
      return make_neg(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lx_.tok == Tok::Caret) {
      lx_.advance();
      Expr expo = parse_unary();  // right-associative, unary minus allowed
      return make_pow(base, expo);
    }
    return base;
  }

  Expr parse_atom() {
    switch (lx_.tok) {
      case Tok::Number: {
        const Cplx v = lx_.num_imag ? Cplx(0.0, lx_.num) : Cplx(lx_.num, 0.0);
        lx_.advance();
        return make_const(v);
      }
      case Tok::LParen: {
        lx_.advance();
        Expr e = parse_sum();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      case Tok::Ident: return parse_ident();
      default: lx_.fail("expected a number, identifier or '('");
    }
  }

  Expr parse_ident() {
    const std::string name = lx_.ident;
    const std::size_t at = lx_.tok_pos;
    lx_.advance();
    if (name == "z") return make_var();
    if (name == "pi") return make_const(std::numbers::pi);
    if (name == "e") return make_const(std::numbers::e);
    if (name == "i") return make_const(Cplx(0.0, 1.0));

    static const struct { const char* n; NodeKind k; } kUnary[] = {
        {"exp", NodeKind::Exp}, {"log", NodeKind::Log}, {"sin", NodeKind::Sin},
        {"cos", NodeKind::Cos}, {"tan", NodeKind::Tan}, {"gamma", NodeKind::Gamma},
        {"digamma", NodeKind::Digamma},
    };
    for (const auto& f : kUnary) {
      if (name == f.n) {
        expect(Tok::LParen, "expected '(' after function name");
        Expr arg = parse_sum();
        expect(Tok::RParen, "expected ')'");
        return make_unary(f.k, arg);
      }
    }
    if (name == "sqrt") {
      expect(Tok::LParen, "expected '(' after function name");
      Expr arg = parse_sum();
      expect(Tok::RParen, "expected ')'");
      return make_pow(arg, make_const(0.5));
    }
    if (name == "pow") {
      expect(Tok::LParen, "expected '(' after function name");
      Expr a = parse_sum();
      expect(Tok::Comma, "pow takes two arguments");
      Expr b = parse_sum();
      expect(Tok::RParen, "expected ')'");
      return make_pow(a, b);
    }
    if (name == "polygamma") {
      expect(Tok::LParen, "expected '(' after function name");
      Expr m = parse_sum();
      expect(Tok::Comma, "polygamma takes two arguments");
      Expr arg = parse_sum();
      expect(Tok::RParen, "expected ')'");
      if (m->kind != NodeKind::Const || m->value.imag() != 0.0 ||
          m->value.real() != std::floor(m->value.real()) || m->value.real() < 0.0)
        throw ParseError("polygamma order must be a nonnegative integer literal", at);
      const int order = static_cast<int>(m->value.real());
      if (order == 0) return make_unary(NodeKind::Digamma, arg);
      return make_polygamma(order, arg);
    }
    throw ParseError("unknown identifier '" + name + "'", at);
  }

  void expect(Tok t, const char* msg) {
    if (lx_.tok != t) lx_.fail(msg);
    lx_.advance();
  }
};

// ---- printing --------------------------------------------------------------

// Precedence levels: 10 sum, 20 product, 30 power, 40 atom. Negation and
// negative constants sit at 15 so they parenthesize inside products.
int precedence(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 10;
    case NodeKind::Neg: return 15;
    case NodeKind::Mul:
    case NodeKind::Div: return 20;
    case NodeKind::Pow: return 30;
    case NodeKind::Const: {
      const Cplx v = e->value;
      if (v.imag() != 0.0 && v.real() != 0.0) return 40;  // printed with parens anyway
      const double comp = v.imag() != 0.0 ? v.imag() : v.real();
      return comp < 0.0 ? 15 : 40;
    }
    default: return 40;
  }
}

void print_node(const Expr& e, int required, std::string& out) {
  const int prec = precedence(e);
  const bool parens = prec < required;
  if (parens) out += '(';
  switch (e->kind) {
    case NodeKind::Const: {
      const Cplx v = e->value;
      if (v.real() != 0.0 && v.imag() != 0.0) {
        out += '(';
        out += format_complex(v);
        out += ')';
      } else {
        out += format_complex(v);
      }
      break;
    }
    case NodeKind::Var: out += 'z'; break;
    // Left-associative operators need the right child one notch tighter so
    // that print -> parse reproduces the tree shape exactly.
    case NodeKind::Add:
      print_node(e->a, 10, out);
      out += '+';
      print_node(e->b, 15, out);
      break;
    case NodeKind::Sub:
      print_node(e->a, 10, out);
      out += '-';
      print_node(e->b, 16, out);
      break;
    case NodeKind::Mul:
      print_node(e->a, 20, out);
      out += '*';
      print_node(e->b, 25, out);
      break;
    case NodeKind::Div:
      print_node(e->a, 20, out);
      out += '/';
      print_node(e->b, 30, out);
      break;
    case NodeKind::Neg:
      out += '-';
      print_node(e->a, 25, out);
      break;
    case NodeKind::Pow:
      print_node(e->a, 40, out);
      out += '^';
      print_node(e->b, 30, out);
      break;
    case NodeKind::Exp: out += "exp("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Log: out += "log("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Sin: out += "sin("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Cos: out += "cos("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Tan: out += "tan("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Gamma: out += "gamma("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Digamma: out += "digamma("; print_node(e->a, 0, out); out += ')'; break;
    case NodeKind::Polygamma:
      out += "polygamma(" + std::to_string(e->order) + ",";
      print_node(e->a, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Expr parse_expression(const std::string& text) { return Parser(text).run(); }

std::string print_expression(const Expr& e) {
  std::string out;
  print_node(e, 0, out);
  return out;
}

}  // namespace merodiff
