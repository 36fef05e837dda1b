// Weighted transition system: the robot/environment model. Finite labeled
// graph with positive transition weights, one initial state, and a
// non-blocking guarantee (every state has a successor).
//
// Text format, line oriented, '#' starts a comment:
//
//   props gather upload recharge
//   state q0
//   state q1 upload
//   init q0
//   trans q0 q1 3.0
//
// Exactly one `init` line; duplicate `trans` lines are an error.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optrun/ltl.hpp"
#include "optrun/word.hpp"

namespace optrun {

class TransitionSystem {
 public:
  struct Edge {
    std::uint32_t dst;
    double weight;
  };

  // Parses and validates the text format above. Throws ParseError with the
  // offending line on malformed input or any invariant violation.
  static TransitionSystem parse(const std::string& text);

  // Programmatic construction; runs the same validation as parse().
  static TransitionSystem build(
      std::vector<std::string> propositions,
      std::vector<std::pair<std::string, LabelSet>> states,
      const std::string& initial,
      std::vector<std::tuple<std::string, std::string, double>> transitions);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const;
  const std::string& state_name(std::uint32_t q) const { return states_[q]; }
  std::optional<std::uint32_t> find_state(const std::string& name) const;
  std::uint32_t state_index(const std::string& name) const;  // throws if unknown
  std::uint32_t initial_state() const { return initial_; }
  const LabelSet& label(std::uint32_t q) const { return labels_[q]; }
  const std::set<std::string>& propositions() const { return propositions_; }
  const std::vector<Edge>& out_edges(std::uint32_t q) const { return out_[q]; }
  bool has_transition(std::uint32_t src, std::uint32_t dst) const;
  double weight(std::uint32_t src, std::uint32_t dst) const;  // throws if absent

  // Returns a copy where `prop` is added to the proposition set and to the
  // label of every state currently labeled with one of `when_any_of`.
  // Used to encode a disjunctive optimizing proposition.
  TransitionSystem with_extra_label(const std::string& prop,
                                    const std::vector<std::string>& when_any_of) const;

  // Canonical text form; parse(print()) reconstructs this system exactly.
  std::string print() const;
  std::string to_dot() const;

 private:
  TransitionSystem() = default;
  void validate() const;

  std::vector<std::string> states_;           // declaration order
  std::map<std::string, std::uint32_t> index_;
  std::vector<LabelSet> labels_;
  std::set<std::string> propositions_;
  std::uint32_t initial_ = 0;
  std::vector<std::vector<Edge>> out_;        // sorted by dst
  std::vector<std::string> prop_order_;       // declaration order, for print()
};

// Word produced by a run: element i is the label of run[i]. Validates that
// consecutive states are connected; when `system_run` is set the run must
// additionally start at the initial state.
Word run_word(const TransitionSystem& ts, const std::vector<std::string>& run,
              bool system_run = false);

// Arrival times along a run: t0 = 0, t[i+1] = t[i] + w(run[i], run[i+1]).
std::vector<double> run_times(const TransitionSystem& ts,
                              const std::vector<std::string>& run);

}  // namespace optrun
