// Product of a weighted transition system with a Buchi automaton. A product
// transition ((q,s),(q',s')) exists when (q,q') is a system transition and
// the automaton can read the label of the SOURCE state q in s, ending in s'.
// Edge weights come from the system; accepting states pair any system state
// with an accepting automaton state; the optimizing set marks pairs whose
// system state is labeled with the optimizing proposition.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optrun/buchi.hpp"
#include "optrun/graph.hpp"
#include "optrun/ts.hpp"

namespace optrun {

class ProductAutomaton {
 public:
  struct Edge {
    std::uint32_t dst;
    double weight;
  };

  // Requires pi to be declared in ts and the automaton alphabet to equal
  // the system's proposition set. The state set is the full Q x S grid;
  // prune with reachable_part().
  static ProductAutomaton build(const TransitionSystem& ts, const BuchiAutomaton& b,
                                const std::string& pi);

  std::size_t num_states() const { return pairs_.size(); }
  std::size_t num_transitions() const;
  std::uint32_t ts_state(std::uint32_t p) const { return pairs_[p].first; }
  std::uint32_t buchi_state(std::uint32_t p) const { return pairs_[p].second; }
  std::string state_id(std::uint32_t p) const;  // "(q,s)"
  const std::string& pi() const { return pi_; }

  const std::vector<std::uint32_t>& initial_states() const { return initial_; }
  bool is_accepting(std::uint32_t p) const { return accepting_[p]; }  // F_P
  bool is_opt(std::uint32_t p) const { return opt_[p]; }              // S_{P,pi}
  std::vector<std::uint32_t> accepting_list() const;
  std::vector<std::uint32_t> opt_list() const;
  const std::vector<Edge>& out_edges(std::uint32_t p) const { return out_[p]; }
  bool has_edge(std::uint32_t src, std::uint32_t dst) const;

  const TransitionSystem& ts() const { return ts_; }

  // States reachable from the initial set, all components restricted.
  ProductAutomaton reachable_part() const;

  // First components of the pair states; validates that the run is
  // edge-valid and, when require_initial, starts in an initial state.
  std::vector<std::string> project_run(const std::vector<std::uint32_t>& run,
                                       bool require_initial = true) const;

  // Graph view for the cycle search. Vertex v of the result is product
  // state v; ids are the composite "(q,s)" names.
  WeightedDigraph to_graph() const;

  std::string to_dot() const;

 private:
  ProductAutomaton(TransitionSystem ts);

  TransitionSystem ts_;
  std::string pi_;
  std::vector<std::string> buchi_names_;  // automaton state ids, for naming
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::vector<std::uint32_t> initial_;
  std::vector<char> accepting_, opt_;
  std::vector<std::vector<Edge>> out_;
};

}  // namespace optrun
