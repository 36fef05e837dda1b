#include "optrun/ltl.hpp"

#include <cassert>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace optrun {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? msg + " at line " + std::to_string(line) +
                                        ", column " + std::to_string(column)
                                  : msg),
      line_(line),
      column_(column) {}

struct Formula::Node {
  Kind kind;
  std::string name;                       // Atom
  std::shared_ptr<const Node> left;       // unary child / binary lhs
  std::shared_ptr<const Node> right;      // binary rhs
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

[[maybe_unused]] bool is_unary(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::Not || k == K::Next || k == K::Eventually || k == K::Always;
}

[[maybe_unused]] bool is_binary(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::And || k == K::Or || k == K::Until || k == K::Release ||
         k == K::Implies;
}

}  // namespace

Formula Formula::tru() {
  static const Formula t{std::make_shared<Node>(Node{Kind::True, {}, nullptr, nullptr})};
  return t;
}

Formula Formula::falsum() { return make_not(tru()); }

Formula Formula::atom(std::string name) {
  return Formula{std::make_shared<Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr})};
}

Formula Formula::make_unary(Kind k, Formula f) {
  assert(is_unary(k));
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->left = std::move(f.node_);
  return Formula{std::move(n)};
}

Formula Formula::make_binary(Kind k, Formula l, Formula r) {
  assert(is_binary(k));
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->left = std::move(l.node_);
  n->right = std::move(r.node_);
  return Formula{std::move(n)};
}

Formula Formula::make_not(Formula f) { return make_unary(Kind::Not, std::move(f)); }
Formula Formula::next(Formula f) { return make_unary(Kind::Next, std::move(f)); }
Formula Formula::eventually(Formula f) { return make_unary(Kind::Eventually, std::move(f)); }
Formula Formula::always(Formula f) { return make_unary(Kind::Always, std::move(f)); }
Formula Formula::make_and(Formula l, Formula r) { return make_binary(Kind::And, std::move(l), std::move(r)); }
Formula Formula::make_or(Formula l, Formula r) { return make_binary(Kind::Or, std::move(l), std::move(r)); }
Formula Formula::until(Formula l, Formula r) { return make_binary(Kind::Until, std::move(l), std::move(r)); }
Formula Formula::release(Formula l, Formula r) { return make_binary(Kind::Release, std::move(l), std::move(r)); }
Formula Formula::implies(Formula l, Formula r) { return make_binary(Kind::Implies, std::move(l), std::move(r)); }

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  assert(node_->kind == Kind::Atom);
  return node_->name;
}

Formula Formula::lhs() const {
  assert(node_->left);
  return Formula{node_->left};
}

Formula Formula::rhs() const {
  assert(node_->right);
  return Formula{node_->right};
}

bool Formula::is_true() const { return node_->kind == Kind::True; }

bool Formula::is_false_literal() const {
  return node_->kind == Kind::Not && node_->left->kind == Kind::True;
}

namespace {

int compare_nodes(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == Formula::Kind::Atom) return a->name.compare(b->name);
  if (a->left) {
    if (int c = compare_nodes(a->left.get(), b->left.get()); c != 0) return c;
  }
  if (a->right) return compare_nodes(a->right.get(), b->right.get());
  return 0;
}

}  // namespace

int Formula::compare(const Formula& a, const Formula& b) {
  return compare_nodes(a.node_.get(), b.node_.get());
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength, loosest first: -> < || < && < U/R < unary < atoms.
int precedence(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Implies: return 0;
    case K::Or: return 1;
    case K::And: return 2;
    case K::Until:
    case K::Release: return 3;
    case K::Not:
    case K::Next:
    case K::Eventually:
    case K::Always: return 4;
    default: return 5;
  }
}

void print_rec(const Formula& f, int parent_prec, std::string& out) {
  using K = Formula::Kind;
  const int prec = precedence(f.kind());
  const bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case K::True: out += "true"; break;
    case K::Atom: out += f.atom_name(); break;
    // Unary operators chain without parentheses: G F a.
    case K::Not:
      out += '!';
      print_rec(f.lhs(), prec, out);
      break;
    case K::Next:
      out += "X ";
      print_rec(f.lhs(), prec, out);
      break;
    case K::Eventually:
      out += "F ";
      print_rec(f.lhs(), prec, out);
      break;
    case K::Always:
      out += "G ";
      print_rec(f.lhs(), prec, out);
      break;
    case K::And:
      // Left-nested prints unparenthesised since && is associative, but the
      // right child needs the same level to reparse identically.
      print_rec(f.lhs(), prec, out);
      out += " && ";
      print_rec(f.rhs(), prec + 1, out);
      break;
    case K::Or:
      print_rec(f.lhs(), prec, out);
      out += " || ";
      print_rec(f.rhs(), prec + 1, out);
      break;
    case K::Until:
      print_rec(f.lhs(), prec + 1, out);
      out += " U ";
      print_rec(f.rhs(), prec, out);
      break;
    case K::Release:
      print_rec(f.lhs(), prec + 1, out);
      out += " R ";
      print_rec(f.rhs(), prec, out);
      break;
    case K::Implies:
      print_rec(f.lhs(), prec + 1, out);
      out += " -> ";
      print_rec(f.rhs(), prec, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print_rec(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Type { Ident, True, False, Bang, AndAnd, OrOr, Arrow, LParen, RParen,
              OpX, OpU, OpR, OpF, OpG, End };
  Type type;
  std::string text;
  int line;
  int column;
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

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) {
      tok_.type = Token::End;
      tok_.text.clear();
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        word += text_[pos_];
        bump();
      }
      if (word == "true") tok_.type = Token::True;
      else if (word == "false") tok_.type = Token::False;
      else if (word == "X") tok_.type = Token::OpX;
      else if (word == "U") tok_.type = Token::OpU;
      else if (word == "R") tok_.type = Token::OpR;
      else if (word == "F") tok_.type = Token::OpF;
      else if (word == "G") tok_.type = Token::OpG;
      else tok_.type = Token::Ident;
      tok_.text = std::move(word);
      return;
    }
    switch (c) {
      case '!': bump(); tok_.type = Token::Bang; return;
      case '(': bump(); tok_.type = Token::LParen; return;
      case ')': bump(); tok_.type = Token::RParen; return;
      case '&':
        bump();
        expect_char('&', "expected '&&'");
        tok_.type = Token::AndAnd;
        return;
      case '|':
        bump();
        expect_char('|', "expected '||'");
        tok_.type = Token::OrOr;
        return;
      case '-':
        bump();
        expect_char('>', "expected '->'");
        tok_.type = Token::Arrow;
        return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void expect_char(char c, const char* msg) {
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(msg, line_, col_);
    bump();
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      bump();
    }
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
  int line_ = 1;
  int col_ = 1;
  Token tok_{};
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula parse() {
    if (lex_.peek().type == Token::End) throw ParseError("empty formula", 1, 1);
    Formula f = parse_implies();
    const Token& t = lex_.peek();
    if (t.type != Token::End) {
      throw ParseError("unexpected token '" + describe(t) + "'", t.line, t.column);
    }
    return f;
  }

 private:
  static std::string describe(const Token& t) {
    switch (t.type) {
      case Token::AndAnd: return "&&";
      case Token::OrOr: return "||";
      case Token::Arrow: return "->";
      case Token::Bang: return "!";
      case Token::LParen: return "(";
      case Token::RParen: return ")";
      case Token::End: return "end of input";
      default: return t.text;
    }
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (lex_.peek().type == Token::Arrow) {
      lex_.take();
      return Formula::implies(l, parse_implies());
    }
    return l;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.peek().type == Token::OrOr) {
      lex_.take();
      f = Formula::make_or(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (lex_.peek().type == Token::AndAnd) {
      lex_.take();
      f = Formula::make_and(f, parse_until());
    }
    return f;
  }

  Formula parse_until() {
    Formula l = parse_unary();
    const Token::Type t = lex_.peek().type;
    if (t == Token::OpU) {
      lex_.take();
      return Formula::until(l, parse_until());
    }
    if (t == Token::OpR) {
      lex_.take();
      return Formula::release(l, parse_until());
    }
    return l;
  }

  Formula parse_unary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Token::Bang: lex_.take(); return Formula::make_not(parse_unary());
      case Token::OpX: lex_.take(); return Formula::next(parse_unary());
      case Token::OpF: lex_.take(); return Formula::eventually(parse_unary());
      case Token::OpG: lex_.take(); return Formula::always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::True: return Formula::tru();
      case Token::False: return Formula::falsum();
      case Token::Ident: return Formula::atom(std::move(t.text));
      case Token::LParen: {
        Formula f = parse_implies();
        Token close = lex_.take();
        if (close.type != Token::RParen) {
          throw ParseError("unbalanced parentheses", close.line, close.column);
        }
        return f;
      }
      case Token::End:
        throw ParseError("unexpected end of formula", t.line, t.column);
      default:
        throw ParseError("unexpected token '" + describe(t) + "'", t.line, t.column);
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_ltl(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

Formula nnf_pos(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::Atom:
      return f;
    case K::Not: return nnf_neg(f.lhs());
    case K::And: return Formula::make_and(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case K::Or: return Formula::make_or(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case K::Next: return Formula::next(nnf_pos(f.lhs()));
    case K::Until: return Formula::until(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case K::Release: return Formula::release(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case K::Implies: return Formula::make_or(nnf_neg(f.lhs()), nnf_pos(f.rhs()));
    case K::Eventually: return Formula::until(Formula::tru(), nnf_pos(f.lhs()));
    case K::Always: return Formula::release(Formula::falsum(), nnf_pos(f.lhs()));
  }
  return f;  // unreachable
}

// Negation of f, pushed inward.
Formula nnf_neg(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return Formula::falsum();
    case K::Atom: return Formula::make_not(f);
    case K::Not: return nnf_pos(f.lhs());
    case K::And: return Formula::make_or(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case K::Or: return Formula::make_and(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case K::Next: return Formula::next(nnf_neg(f.lhs()));
    case K::Until: return Formula::release(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case K::Release: return Formula::until(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case K::Implies: return Formula::make_and(nnf_pos(f.lhs()), nnf_neg(f.rhs()));
    // !F a == G !a == false R !a
    case K::Eventually: return Formula::release(Formula::falsum(), nnf_neg(f.lhs()));
    // !G a == F !a == true U !a
    case K::Always: return Formula::until(Formula::tru(), nnf_neg(f.lhs()));
  }
  return f;  // unreachable
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_pos(f); }

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return;
    case K::Atom: out.insert(f.atom_name()); return;
    case K::Not:
    case K::Next:
    case K::Eventually:
    case K::Always:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

}  // namespace optrun
