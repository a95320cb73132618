#include "mlwb/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "mlwb/errors.hpp"

namespace mlwb {

namespace {

enum class Tok {
  Ident, Tilde, Amp, Pipe, Arrow, DArrow, LBrack, RBrack, LAngle, RAngle,
  LParen, RParen, Comma, Dot, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id += text_[pos_];
        bump();
      }
      tok_ = {Tok::Ident, std::move(id), tok_.line, tok_.col};
      return;
    }
    switch (c) {
      case '~': single(Tok::Tilde); return;
      case '&': single(Tok::Amp); return;
      case '|': single(Tok::Pipe); return;
      case '[': single(Tok::LBrack); return;
      case ']': single(Tok::RBrack); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case ',': single(Tok::Comma); return;
      case '.': single(Tok::Dot); return;
      case '>': single(Tok::RAngle); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          bump(); bump();
          tok_ = {Tok::Arrow, "->", tok_.line, tok_.col};
          return;
        }
        throw ParseError(line_, col_, "expected '->' after '-'");
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
          bump(); bump(); bump();
          tok_ = {Tok::DArrow, "<->", tok_.line, tok_.col};
          return;
        }
        single(Tok::LAngle);
        return;
      default:
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }
  }

  void single(Tok k) {
    tok_ = {k, std::string(1, text_[pos_]), tok_.line, tok_.col};
    bump();
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_{};
};

bool is_keyword(const std::string& s) {
  return s == "T" || s == "F" || s == "forall" || s == "exists";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Formula run() {
    Formula f = formula();
    if (lx_.peek().kind != Tok::End) lx_.fail("trailing input after formula");
    f.predicates();  // surfaces arity mismatches with the standard error
    return f;
  }

 private:
  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = imp();
    while (lx_.peek().kind == Tok::DArrow) {
      lx_.take();
      f = Formula::iff(std::move(f), imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (lx_.peek().kind == Tok::Arrow) {
      lx_.take();
      f = Formula::implies(std::move(f), imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (lx_.peek().kind == Tok::Pipe) {
      lx_.take();
      f = Formula::disj(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (lx_.peek().kind == Tok::Amp) {
      lx_.take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = lx_.peek();
    switch (t.kind) {
      case Tok::Tilde:
        lx_.take();
        return Formula::neg(unary());
      case Tok::LBrack: {
        lx_.take();
        Modality m = modality(Tok::RBrack, "]");
        return Formula::box(std::move(m), unary());
      }
      case Tok::LAngle: {
        lx_.take();
        Modality m = modality(Tok::RAngle, ">");
        return Formula::diamond(std::move(m), unary());
      }
      case Tok::Ident:
        if (t.text == "forall" || t.text == "exists") {
          bool universal = t.text == "forall";
          lx_.take();
          Token v = expect(Tok::Ident, "variable name");
          if (is_keyword(v.text))
            throw ParseError(v.line, v.col, "'" + v.text + "' cannot be a variable");
          expect(Tok::Dot, "'.'");
          Formula body = formula();
          return universal ? Formula::forall(v.text, std::move(body))
                           : Formula::exists(v.text, std::move(body));
        }
        return atom();
      default:
        return atom();
    }
  }

  Modality modality(Tok closer, const char* closer_name) {
    if (lx_.peek().kind == Tok::Ident) {
      Token name = lx_.take();
      expect(closer, closer_name);
      return Modality(name.text);
    }
    expect(closer, closer_name);
    return Modality::box();
  }

  Formula atom() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::LParen) {
      lx_.take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) lx_.fail("expected a formula");
    Token name = lx_.take();
    if (name.text == "T") return Formula::top();
    if (name.text == "F") return Formula::bottom();
    if (is_keyword(name.text))
      throw ParseError(name.line, name.col, "misplaced keyword '" + name.text + "'");
    std::vector<std::string> args;
    if (lx_.peek().kind == Tok::LParen) {
      lx_.take();
      for (;;) {
        Token v = expect(Tok::Ident, "variable name");
        if (is_keyword(v.text))
          throw ParseError(v.line, v.col, "'" + v.text + "' cannot be a variable");
        args.push_back(v.text);
        if (lx_.peek().kind == Tok::Comma) {
          lx_.take();
          continue;
        }
        expect(Tok::RParen, "')'");
        break;
      }
    }
    return Formula::atom(name.text, std::move(args));
  }

  Token expect(Tok k, const char* what) {
    if (lx_.peek().kind != k) lx_.fail(std::string("expected ") + what);
    return lx_.take();
  }

  Lexer lx_;
};

}  // namespace

Formula parse(const std::string& text) { return Parser(text).run(); }

std::vector<Formula> parse_corpus(const std::string& text) {
  std::vector<Formula> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    out.push_back(parse(line));
  }
  return out;
}

}  // namespace mlwb
