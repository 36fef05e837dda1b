// Buchi automata with symbolic transition guards, and the LTL translation.
//
// The translation is a tableau construction: automaton states are sorted
// obligation sets (formulas that must hold from the current position), each
// expansion of an obligation set yields guarded successors, per-Until
// acceptance marks form a generalized acceptance condition, and a
// round-robin counter turns the generalized automaton into an ordinary one.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "optrun/ltl.hpp"
#include "optrun/word.hpp"

namespace optrun {

// Conjunction of literals: every name in positive() must be in the letter,
// every name in negative() must be absent. A transition pair may carry
// several guards; together they read as a disjunction.
class Guard {
 public:
  // Empty when a proposition is required both present and absent.
  static std::optional<Guard> make(std::vector<std::string> pos,
                                   std::vector<std::string> neg);
  static Guard top();

  bool satisfied_by(const LabelSet& letter) const;
  bool is_top() const { return pos_.empty() && neg_.empty(); }
  const std::vector<std::string>& positive() const { return pos_; }
  const std::vector<std::string>& negative() const { return neg_; }
  std::string to_string() const;  // "gather && !upload"; "1" when top

  auto operator<=>(const Guard&) const = default;

 private:
  Guard() = default;
  std::vector<std::string> pos_, neg_;  // sorted, disjoint
};

struct BuchiTransition {
  std::uint32_t src;
  Guard guard;
  std::uint32_t dst;
};

class BuchiAutomaton {
 public:
  BuchiAutomaton(std::size_t num_states, std::vector<std::uint32_t> initial,
                 std::vector<std::uint32_t> accepting,
                 std::vector<BuchiTransition> transitions,
                 std::set<std::string> alphabet);

  std::size_t num_states() const { return num_states_; }
  std::string state_id(std::uint32_t s) const { return "s" + std::to_string(s); }
  const std::vector<std::uint32_t>& initial_states() const { return initial_; }
  const std::vector<std::uint32_t>& accepting_states() const { return accepting_; }
  bool is_initial(std::uint32_t s) const;
  bool is_accepting(std::uint32_t s) const;
  const std::vector<BuchiTransition>& transitions() const { return transitions_; }
  std::span<const BuchiTransition> transitions_from(std::uint32_t s) const;
  const std::set<std::string>& alphabet() const { return alphabet_; }

  std::string to_dot() const;

 private:
  std::size_t num_states_;
  std::vector<std::uint32_t> initial_;    // sorted
  std::vector<std::uint32_t> accepting_;  // sorted
  std::vector<BuchiTransition> transitions_;  // sorted by (src, dst, guard)
  std::vector<std::size_t> row_begin_;        // index into transitions_ per src
  std::set<std::string> alphabet_;
};

// Thrown when the translation exceeds its state budget. The construction is
// worst-case exponential in the formula size.
class TranslationLimitError : public std::runtime_error {
 public:
  explicit TranslationLimitError(std::size_t limit);
};

// L(result) = all infinite words over 2^alphabet satisfying f. The alphabet
// must cover every atom of f.
BuchiAutomaton translate(const Formula& f, std::set<std::string> alphabet,
                         std::size_t max_states = 10000);
BuchiAutomaton translate(const Formula& f);  // alphabet = atoms_of(f)

// Decides membership of the ultimately periodic word prefix.cycle^omega.
// The cycle must be nonempty.
bool accepts_lasso(const BuchiAutomaton& b, const Word& prefix, const Word& cycle);

}  // namespace optrun
