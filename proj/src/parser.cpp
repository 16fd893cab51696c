#include "brelim/parser.hpp"

#include <cctype>
#include <cstdint>
#include <set>
#include <vector>

namespace brelim {

namespace {

enum class Tok {
  Ident, Num,
  LParen, RParen, LBrack, RBrack, LAngle, RAngle,
  Comma, Dot, Colon, Arrow, Star,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t num = 0;
  int line, col;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "fun", "rec", "nil", "append", "concat", "len", "hat", "idx", "trunc",
      "fst", "snd", "br", "if0", "lt", "geq", "plus", "monus", "max", "S"};
  return kw;
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) { bump(1); continue; }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    int tl = line, tc = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", 0, tl, tc});
      bump(2);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string text = src.substr(i, j - i);
      std::uint64_t value = 0;
      try {
        value = std::stoull(text);
      } catch (const std::out_of_range&) {
        throw ParseError(tl, tc, "numeral out of range: " + text);
      }
      out.push_back({Tok::Num, text, value, tl, tc});
      bump(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), 0, tl, tc});
      bump(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case '*': k = Tok::Star; break;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), 0, tl, tc});
    bump(1);
  }
  out.push_back({Tok::End, "", 0, line, col});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, msg + ", got " + got);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos;
  }

  bool at_ident(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  // ---- types ----

  FinType type() {
    FinType t = prod_type();
    if (peek().kind == Tok::Arrow) {
      next();
      return FinType::arrow(t, type());
    }
    return t;
  }

  FinType prod_type() {
    FinType t = seq_type();
    while (at_ident("x")) {
      next();
      t = FinType::prod(t, seq_type());
    }
    return t;
  }

  FinType seq_type() {
    FinType t = atom_type();
    while (peek().kind == Tok::Star) {
      next();
      t = FinType::seq(t);
    }
    return t;
  }

  FinType atom_type() {
    if (at_ident("N")) {
      next();
      return FinType::nat();
    }
    if (peek().kind == Tok::LParen) {
      next();
      FinType t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  FinType bracketed_type() {
    expect(Tok::LBrack, "'['");
    FinType t = type();
    expect(Tok::RBrack, "']'");
    return t;
  }

  // ---- terms ----

  Term term() {
    if (at_ident("fun")) {
      next();
      if (peek().kind != Tok::Ident) fail("expected a binder name");
      std::string name = next().text;
      if (keywords().count(name)) fail("'" + name + "' is a keyword");
      expect(Tok::Colon, "':'");
      FinType ty = type();
      expect(Tok::Dot, "'.'");
      return lam(std::move(name), std::move(ty), term());
    }
    return app_term();
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Num:
      case Tok::LParen:
      case Tok::LAngle:
        return true;
      case Tok::Ident:
        return peek().text != "fun";
      default:
        return false;
    }
  }

  Term app_term() {
    Term t = atom();
    while (starts_atom()) t = app(std::move(t), atom());
    return t;
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Num:
        next();
        return nat_lit(t.num);
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LAngle: {
        next();
        Term a = term();
        expect(Tok::Comma, "','");
        Term b = term();
        expect(Tok::RAngle, "'>'");
        return pair(std::move(a), std::move(b));
      }
      case Tok::Ident:
        break;
      default:
        fail("expected a term");
    }
    std::string word = next().text;
    if (word == "S") return succ(atom());
    if (word == "rec") return rec(bracketed_type());
    if (word == "nil") return nil(bracketed_type());
    if (word == "br") {
      expect(Tok::LBrack, "'['");
      FinType tau = type();
      expect(Tok::Comma, "','");
      FinType sigma = type();
      expect(Tok::RBrack, "']'");
      return br(std::move(tau), std::move(sigma));
    }
    if (word == "fst") return fst(atom());
    if (word == "snd") return snd(atom());
    if (word == "len") return len(atom());
    if (word == "hat") return hat(atom());
    if (word == "append") { Term a = atom(); return append(std::move(a), atom()); }
    if (word == "concat") { Term a = atom(); return concat(std::move(a), atom()); }
    if (word == "idx") { Term a = atom(); return index(std::move(a), atom()); }
    if (word == "trunc") {
      FinType elem = bracketed_type();
      Term a = atom();
      return trunc(std::move(elem), std::move(a), atom());
    }
    if (word == "lt") { Term a = atom(); return lt(std::move(a), atom()); }
    if (word == "geq") { Term a = atom(); return geq(std::move(a), atom()); }
    if (word == "plus") { Term a = atom(); return plus(std::move(a), atom()); }
    if (word == "monus") { Term a = atom(); return monus(std::move(a), atom()); }
    if (word == "max") { Term a = atom(); return max(std::move(a), atom()); }
    if (word == "if0") {
      Term c = atom();
      Term z = atom();
      return if_zero(std::move(c), std::move(z), atom());
    }
    if (word == "fun") fail("'fun' needs parentheses in argument position");
    return var(std::move(word));
  }
};

}  // namespace

Term parse_term(const std::string& src) {
  Parser p{lex(src)};
  Term t = p.term();
  if (p.peek().kind != Tok::End) p.fail("trailing input after term");
  return t;
}

FinType parse_type(const std::string& src) {
  Parser p{lex(src)};
  FinType t = p.type();
  if (p.peek().kind != Tok::End) p.fail("trailing input after type");
  return t;
}

}  // namespace brelim
