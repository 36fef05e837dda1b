// End-to-end planning: translate the formula, build and prune the product,
// search the minimum-bottleneck suffix cycle, attach a cheapest prefix, and
// project back to the transition system.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optrun/product.hpp"

namespace optrun {

// Infinite run in prefix-suffix shape: prefix states come before the anchor,
// the suffix starts at the anchor and repeats forever.
struct RunLasso {
  std::vector<std::string> prefix;
  std::vector<std::string> suffix;  // nonempty; suffix.front() == anchor
  std::string anchor;
};

struct PlanStats {
  std::size_t ts_states = 0;
  std::size_t buchi_states = 0;
  std::size_t product_states = 0;  // |Q| * |S|, before pruning
  std::size_t product_states_reachable = 0;
  std::size_t accepting_states = 0;  // |F_P| within the reachable part
  std::size_t opt_states = 0;        // |S_{P,pi}| within the reachable part
  double translate_ms = 0.0;
  double product_ms = 0.0;
  double cycle_ms = 0.0;
  double prefix_ms = 0.0;
};

struct PlanResult {
  bool satisfiable = false;
  RunLasso lasso;  // meaningful iff satisfiable
  double cost = kInfinity;
  bool conjoined_gf_pi = false;
  std::optional<Formula> effective_formula;
  std::vector<std::string> product_prefix;  // composite "(q,s)" ids
  std::vector<std::string> product_suffix;
  std::string product_anchor;
  PlanStats stats;
};

struct PlanOptions {
  std::size_t max_buchi_states = 10000;
};

// The formula is expected in the shape "phi && G F pi"; when the conjunct is
// missing it is added automatically and reported via conjoined_gf_pi.
PlanResult optimal_run(const TransitionSystem& ts, const Formula& phi,
                       const std::string& pi, const PlanOptions& opts = {});

// Conjoins "G F pi" unless it is already a top-level conjunct; `added`
// reports whether anything changed.
Formula ensure_gf_pi(const Formula& phi, const std::string& pi, bool* added = nullptr);

// Maximum time gap between consecutive pi-instances over the infinite
// repetition of the suffix, wrap-around included; +infinity when the suffix
// never satisfies pi. The suffix must be edge-valid when repeated.
double suffix_cost(const TransitionSystem& ts, const std::vector<std::string>& suffix,
                   const std::string& pi);

// Cost of the whole lasso run. Equal to suffix_cost of its suffix; the
// prefix only delays the steady state.
double run_cost(const TransitionSystem& ts, const RunLasso& lasso,
                const std::string& pi);

// Minimum-total-weight product path from an initial state to cycle.front(),
// excluding the anchor itself; empty when an initial state is the anchor.
std::vector<std::uint32_t> prefix_to_cycle(const ProductAutomaton& p,
                                           std::span<const std::uint32_t> cycle);

// Arrival times of pi-instances within one suffix period, plus the period.
struct SuffixTiming {
  std::vector<double> pi_times;
  double period = 0.0;
};
SuffixTiming suffix_timing(const TransitionSystem& ts,
                           const std::vector<std::string>& suffix,
                           const std::string& pi);

}  // namespace optrun
