// Brute-force reference implementations, used by tests and the `verify`
// subcommand only. Nothing here may depend on the translation, product, or
// planning modules; the whole point is an independent answer.

#pragma once

#include <set>
#include <string>

#include "optrun/graph.hpp"
#include "optrun/ltl.hpp"
#include "optrun/ts.hpp"
#include "optrun/word.hpp"

namespace optrun::oracle {

// Ultimately periodic word prefix.cycle^omega.
struct LassoWord {
  Word prefix;
  Word cycle;  // nonempty
};

// LTL truth of f at position 0, by positional evaluation over the
// |prefix| + |cycle| distinct positions with fixpoints across the cycle
// (least for Until/Eventually, greatest for Release/Always). Handles
// sugar directly, so pre- and post-NNF formulas can be compared.
bool lasso_satisfies(const Formula& f, const LassoWord& w);

// Cross-check evaluator: unrolls the lasso to 4 * (|prefix| + |cycle|) *
// (1 + depth(f)) positions and evaluates bounded semantics, which is exact
// at that horizon.
bool lasso_satisfies_unrolled(const Formula& f, const LassoWord& w);

// Minimum s_bottleneck_length over closed walks through some vertex of
// f_set with at most max_edges edges; +infinity when none visits s_set.
// Plain depth-first walk enumeration (depth capped by the edge budget)
// with incumbent and dominance pruning; exponential in the worst case and
// meant for |V| <= 8.
double brute_min_s_bottleneck(const WeightedDigraph& g, const std::set<Vertex>& s_set,
                              const std::set<Vertex>& f_set, std::size_t max_edges);

// Minimum steady-state max gap between pi-instances over all lasso runs of
// ts whose words satisfy phi: prefixes of at most max_prefix_edges edges,
// repeated suffixes of at most max_suffix_edges edges. Satisfaction goes
// through lasso_satisfies, never through an automaton. +infinity when no
// such lasso satisfies phi.
double brute_optimal_cost(const TransitionSystem& ts, const Formula& phi,
                          const std::string& pi, std::size_t max_suffix_edges,
                          std::size_t max_prefix_edges);

}  // namespace optrun::oracle
