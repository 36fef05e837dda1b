// LTL formulas over named atomic propositions: AST, parser, negation
// normal form.
//
// Concrete syntax accepted by parse_ltl():
//
//   formula  := or_expr ('->' formula)?            right associative
//   or_expr  := and_expr ('||' and_expr)*
//   and_expr := u_expr ('&&' u_expr)*
//   u_expr   := unary (('U' | 'R') u_expr)?        right associative
//   unary    := ('!' | 'X' | 'F' | 'G') unary | primary
//   primary  := 'true' | 'false' | ident | '(' formula ')'
//
// Identifiers are [A-Za-z_][A-Za-z0-9_]*; the operator letters and
// true/false are reserved. 'false' parses to the canonical literal !true.

#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace optrun {

// Parse or validation failure with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Immutable formula value with shared structure; cheap to copy and safe to
// share across threads. Implies/Eventually/Always are syntactic sugar that
// survives parsing and is eliminated by to_nnf().
class Formula {
 public:
  enum class Kind {
    True,
    Atom,
    Not,
    And,
    Or,
    Next,
    Until,
    Release,
    Implies,
    Eventually,
    Always,
  };

  struct Node;  // opaque shared node

  static Formula tru();
  static Formula falsum();  // canonical false literal, !true
  static Formula atom(std::string name);
  static Formula make_not(Formula f);
  static Formula make_and(Formula l, Formula r);
  static Formula make_or(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula release(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula eventually(Formula f);
  static Formula always(Formula f);

  Kind kind() const;
  const std::string& atom_name() const;  // Atom nodes only
  Formula lhs() const;                   // first child of any non-leaf
  Formula rhs() const;                   // second child of binary nodes

  bool is_true() const;
  bool is_false_literal() const;  // !true

  // Structural equality and a total order. The order is what every
  // deterministic iteration in the pipeline is built on.
  static int compare(const Formula& a, const Formula& b);
  bool operator==(const Formula& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Formula& o) const { return compare(*this, o) != 0; }
  bool operator<(const Formula& o) const { return compare(*this, o) < 0; }

  // Minimally parenthesised; reparses to an identical AST.
  std::string to_string() const;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make_unary(Kind k, Formula f);
  static Formula make_binary(Kind k, Formula l, Formula r);
  std::shared_ptr<const Node> node_;
};

Formula parse_ltl(const std::string& text);

// Removes sugar, pushes negation down to atoms. The only negations left
// are directly above atoms, plus the false literal !true.
Formula to_nnf(const Formula& f);

std::set<std::string> atoms_of(const Formula& f);

}  // namespace optrun
