#include "operadiff/expression.hpp"

#include <cctype>
#include <set>

namespace operadiff {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LBrack, RBrack, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::string describe(const Token& t) {
  return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
}

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (c == '\n') {
      ++line, col = 1, ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col, ++i;
      continue;
    }
    std::size_t j = i + 1;
    Tok k;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      k = Tok::Number;
    } else if (ident_start(c)) {
      while (j < s.size() && ident_char(s[j])) ++j;
      k = Tok::Ident;
    } else {
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '[': k = Tok::LBrack; break;
        case ']': k = Tok::RBrack; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        default: fail(line, col, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({k, std::string(s.substr(i, j - i)), line, col});
    col += j - i;
    i = j;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view flavor, std::vector<Token> toks) : flavor_(flavor), toks_(std::move(toks)) {}

  Expr parse() {
    auto e = expr();
    if (peek().kind != Tok::End) error(peek(), "unexpected " + describe(peek()));
    return e;
  }

 private:
  bool generic() const { return flavor_ != "com" && flavor_ != "ass" && flavor_ != "lie"; }
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void error(const Token& t, const std::string& msg) const { fail(t.line, t.column, msg); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) error(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  static Expr node(Expr::Kind k, const Token& at) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  Expr expr() {
    auto sum = node(Expr::Kind::Sum, peek());
    bool first = true;
    while (true) {
      bool neg = false;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        neg = next().kind == Tok::Minus;
      } else if (!first) {
        break;
      }
      auto t = term();
      if (neg) {
        if (t.kind == Expr::Kind::Scale) {
          t.value = -t.value;
        } else {
          auto s = node(Expr::Kind::Scale, peek());
          s.line = t.line, s.column = t.column;
          s.value = Scalar(-1);
          s.children.push_back(std::move(t));
          t = std::move(s);
        }
      }
      sum.children.push_back(std::move(t));
      first = false;
    }
    return sum;
  }

  Scalar rational() {
    const auto& n = expect(Tok::Number, "a number");
    std::string text = n.text;
    if (peek().kind == Tok::Slash) {
      next();
      text += "/" + expect(Tok::Number, "a denominator").text;
    }
    try {
      return Scalar::parse(text);
    } catch (const InputError& e) {
      error(n, e.what());
    }
  }

  Expr term() {
    const auto& start = peek();
    std::optional<Scalar> coeff;
    if (start.kind == Tok::Number && !(generic() && peek(1).kind == Tok::LParen)) {
      coeff = rational();
      if (peek().kind == Tok::Star) {
        next();
      } else if (!starts_factor(peek())) {
        auto c = node(Expr::Kind::Constant, start);
        c.value = *coeff;
        return c;
      }
    }
    auto prod = node(Expr::Kind::Product, peek());
    prod.children.push_back(factor());
    while (peek().kind == Tok::Star) {
      const auto& star = next();
      if (flavor_ != "com" && flavor_ != "ass") error(star, "products are not available for " + flavor_);
      prod.children.push_back(factor());
    }
    Expr body = prod.children.size() == 1 ? std::move(prod.children[0]) : std::move(prod);
    if (!coeff) return body;
    auto s = node(Expr::Kind::Scale, start);
    s.value = *coeff;
    s.children.push_back(std::move(body));
    return s;
  }

  bool starts_factor(const Token& t) const {
    return t.kind == Tok::Ident || t.kind == Tok::LBrack || t.kind == Tok::LParen ||
           (generic() && t.kind == Tok::Number);
  }

  Expr factor() {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        auto e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBrack: {
        if (flavor_ != "lie") error(t, "brackets are only available for lie");
        next();
        auto b = node(Expr::Kind::Bracket, t);
        b.children.push_back(expr());
        expect(Tok::Comma, "','");
        b.children.push_back(expr());
        expect(Tok::RBrack, "']'");
        return b;
      }
      case Tok::Number:
      case Tok::Ident: {
        next();
        if (peek().kind == Tok::LParen) {
          if (!generic()) error(peek(), "operation calls are not available for " + flavor_);
          next();
          auto c = node(Expr::Kind::Call, t);
          c.name = t.text;
          if (peek().kind != Tok::RParen) {
            c.children.push_back(expr());
            while (peek().kind == Tok::Comma) {
              next();
              c.children.push_back(expr());
            }
          }
          expect(Tok::RParen, "')'");
          return c;
        }
        if (t.kind == Tok::Number) error(t, "expected a factor, found " + describe(t));
        if (peek().kind == Tok::Caret) {
          const auto& caret = next();
          if (flavor_ != "com") error(caret, "powers are only available for com");
          auto p = node(Expr::Kind::Power, t);
          p.name = t.text;
          const auto& n = expect(Tok::Number, "an exponent");
          if (n.text.size() > 4) error(n, "exponent too large");
          p.exponent = std::stoul(n.text);
          return p;
        }
        auto v = node(Expr::Kind::Variable, t);
        v.name = t.text;
        return v;
      }
      default:
        error(t, "expected a factor, found " + describe(t));
    }
  }

  std::string flavor_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::optional<Generator> generator_of_arity(const Operad& P, std::size_t n) {
  for (const auto& g : P.generators())
    if (g.arity == n) return g;
  return std::nullopt;
}

void collect(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Variable || e.kind == Expr::Kind::Power) out.insert(e.name);
  for (const auto& c : e.children) collect(c, out);
}

}  // namespace

Expr parse_expression_ast(std::string_view flavor, std::string_view text) {
  return Parser(flavor, tokenize(text)).parse();
}

FreeElement evaluate_expression(const FreeMonad& S, const Expr& e, const BasedModule& V) {
  const auto& P = S.operad();
  auto at = [&](const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + msg);
  };
  auto var = [&](const std::string& name) {
    auto i = V.find(name);
    if (!i) throw at("unknown variable '" + name + "'");
    return S.unit(*i);
  };
  auto constant = [&]() {
    auto u = generator_of_arity(P, 0);
    if (!u) throw at("constants are not available for " + P.flavor());
    return S.apply(OperadElement::basis(0, u->basis_index), std::vector<FreeElement>{});
  };
  auto product = [&](std::vector<FreeElement> fs) {
    if (fs.size() == 1) return fs[0];
    auto m = generator_of_arity(P, 2);
    if (!m) throw at("no binary product for " + P.flavor());
    auto mu = OperadElement::basis(2, m->basis_index);
    FreeElement acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = S.apply(mu, std::vector<FreeElement>{acc, fs[i]});
    return acc;
  };

  switch (e.kind) {
    case Expr::Kind::Constant: {
      FreeElement out;
      if (e.value.is_zero()) return out;
      out.add(constant(), e.value);
      return out;
    }
    case Expr::Kind::Variable:
      return var(e.name);
    case Expr::Kind::Sum: {
      FreeElement out;
      for (const auto& c : e.children) out.add(evaluate_expression(S, c, V));
      return out;
    }
    case Expr::Kind::Scale: {
      FreeElement out;
      out.add(evaluate_expression(S, e.children.at(0), V), e.value);
      return out;
    }
    case Expr::Kind::Product: {
      std::vector<FreeElement> fs;
      for (const auto& c : e.children) fs.push_back(evaluate_expression(S, c, V));
      return product(std::move(fs));
    }
    case Expr::Kind::Power: {
      if (e.exponent == 0) return constant();
      return product(std::vector<FreeElement>(e.exponent, var(e.name)));
    }
    case Expr::Kind::Bracket: {
      auto b = generator_of_arity(P, 2);
      if (!b) throw at("no bracket for " + P.flavor());
      return S.apply(OperadElement::basis(2, b->basis_index),
                     std::vector<FreeElement>{evaluate_expression(S, e.children.at(0), V),
                                              evaluate_expression(S, e.children.at(1), V)});
    }
    case Expr::Kind::Call: {
      const std::size_t n = e.children.size();
      std::optional<std::size_t> op;
      if (!P.max_arity() || n <= *P.max_arity())
        for (std::size_t i = 0; i < P.dim(n); ++i)
          if (P.symbol(n, i) == e.name) op = i;
      if (!op) throw at("unknown operation '" + e.name + "' of arity " + std::to_string(n));
      std::vector<FreeElement> args;
      for (const auto& c : e.children) args.push_back(evaluate_expression(S, c, V));
      return S.apply(OperadElement::basis(n, *op), args);
    }
  }
  return {};
}

FreeElement parse_expression(const FreeMonad& S, std::string_view text, const BasedModule& V) {
  return evaluate_expression(S, parse_expression_ast(S.operad().flavor(), text), V);
}

std::vector<std::string> expression_variables(const Expr& e) {
  std::set<std::string> s;
  collect(e, s);
  return {s.begin(), s.end()};
}

}  // namespace operadiff
