#include "optrun/optimal_run.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace optrun {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Looks for "G F pi" among the top-level conjuncts, in sugar or core form.
bool has_gf_pi_conjunct(const Formula& f, const std::string& pi) {
  if (f.kind() == Formula::Kind::And) {
    return has_gf_pi_conjunct(f.lhs(), pi) || has_gf_pi_conjunct(f.rhs(), pi);
  }
  const Formula sugar = Formula::always(Formula::eventually(Formula::atom(pi)));
  const Formula core =
      Formula::release(Formula::falsum(), Formula::until(Formula::tru(), Formula::atom(pi)));
  return f == sugar || f == core;
}

}  // namespace

Formula ensure_gf_pi(const Formula& phi, const std::string& pi, bool* added) {
  if (has_gf_pi_conjunct(phi, pi)) {
    if (added) *added = false;
    return phi;
  }
  if (added) *added = true;
  return Formula::make_and(phi,
                           Formula::always(Formula::eventually(Formula::atom(pi))));
}

double suffix_cost(const TransitionSystem& ts, const std::vector<std::string>& suffix,
                   const std::string& pi) {
  const SuffixTiming t = suffix_timing(ts, suffix, pi);
  if (t.pi_times.empty()) return kInfinity;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < t.pi_times.size(); ++i) {
    best = std::max(best, t.pi_times[i + 1] - t.pi_times[i]);
  }
  best = std::max(best, t.period - t.pi_times.back() + t.pi_times.front());
  return best;
}

SuffixTiming suffix_timing(const TransitionSystem& ts,
                           const std::vector<std::string>& suffix,
                           const std::string& pi) {
  if (suffix.empty()) throw std::invalid_argument("empty suffix");
  std::vector<std::uint32_t> idx;
  idx.reserve(suffix.size());
  for (const auto& name : suffix) idx.push_back(ts.state_index(name));
  SuffixTiming out;
  double t = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (ts.label(idx[i]).count(pi)) out.pi_times.push_back(t);
    const std::uint32_t next = idx[(i + 1) % idx.size()];
    if (!ts.has_transition(idx[i], next)) {
      throw std::invalid_argument("invalid suffix transition " + suffix[i] + " -> " +
                                  ts.state_name(next));
    }
    t += ts.weight(idx[i], next);
  }
  out.period = t;
  return out;
}

double run_cost(const TransitionSystem& ts, const RunLasso& lasso,
                const std::string& pi) {
  // Validate the prefix and the junction; the steady-state cost itself is
  // the suffix cost (the prefix only shifts time).
  if (lasso.suffix.empty()) throw std::invalid_argument("lasso without suffix");
  if (lasso.anchor != lasso.suffix.front()) {
    throw std::invalid_argument("lasso anchor must equal suffix front");
  }
  std::vector<std::string> walk = lasso.prefix;
  walk.push_back(lasso.suffix.front());
  run_times(ts, walk);  // throws on an invalid prefix edge
  return suffix_cost(ts, lasso.suffix, pi);
}

std::vector<std::uint32_t> prefix_to_cycle(const ProductAutomaton& p,
                                           std::span<const std::uint32_t> cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  const std::uint32_t anchor = cycle.front();
  if (anchor >= p.num_states()) throw std::invalid_argument("cycle state out of range");

  // Multi-source Dijkstra from the initial set; deterministic through the
  // (distance, state) queue order.
  const std::size_t n = p.num_states();
  std::vector<double> dist(n, kInfinity);
  std::vector<std::uint32_t> pred(n, kNoVertex);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto s : p.initial_states()) {
    dist[s] = 0.0;
    pq.emplace(0.0, s);
  }
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == anchor) break;
    for (const auto& e : p.out_edges(v)) {
      const double nd = d + e.weight;
      if (nd < dist[e.dst]) {
        dist[e.dst] = nd;
        pred[e.dst] = v;
        pq.emplace(nd, e.dst);
      }
    }
  }
  if (dist[anchor] == kInfinity) {
    throw std::runtime_error("cycle anchor unreachable from the initial states");
  }
  std::vector<std::uint32_t> path;
  for (std::uint32_t cur = pred[anchor]; cur != kNoVertex; cur = pred[cur]) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PlanResult optimal_run(const TransitionSystem& ts, const Formula& phi,
                       const std::string& pi, const PlanOptions& opts) {
  if (!ts.propositions().count(pi)) {
    throw std::invalid_argument("optimizing proposition '" + pi +
                                "' is not declared in the transition system");
  }

  PlanResult result;
  result.stats.ts_states = ts.num_states();

  bool added = false;
  const Formula effective = ensure_gf_pi(phi, pi, &added);
  result.conjoined_gf_pi = added;
  result.effective_formula = effective;

  auto t0 = Clock::now();
  const BuchiAutomaton buchi = translate(effective, ts.propositions(), opts.max_buchi_states);
  result.stats.buchi_states = buchi.num_states();
  result.stats.translate_ms = ms_since(t0);

  t0 = Clock::now();
  const ProductAutomaton full = ProductAutomaton::build(ts, buchi, pi);
  result.stats.product_states = full.num_states();
  const ProductAutomaton product = full.reachable_part();
  result.stats.product_states_reachable = product.num_states();
  result.stats.product_ms = ms_since(t0);

  const auto accepting = product.accepting_list();
  const auto opt = product.opt_list();
  result.stats.accepting_states = accepting.size();
  result.stats.opt_states = opt.size();

  t0 = Clock::now();
  const WeightedDigraph graph = product.to_graph();
  const std::set<Vertex> s_set(opt.begin(), opt.end());
  const std::set<Vertex> f_set(accepting.begin(), accepting.end());
  const auto cycle = min_bottleneck_cycle(graph, s_set, f_set);
  result.stats.cycle_ms = ms_since(t0);

  if (!cycle) {
    result.satisfiable = false;
    return result;
  }

  // Open suffix: drop the closing repetition of the anchor.
  std::vector<std::uint32_t> suffix(cycle->cycle.begin(), cycle->cycle.end() - 1);

  t0 = Clock::now();
  const std::vector<std::uint32_t> prefix = prefix_to_cycle(product, suffix);
  result.stats.prefix_ms = ms_since(t0);

  std::vector<std::uint32_t> full_run = prefix;
  full_run.insert(full_run.end(), suffix.begin(), suffix.end());
  const std::vector<std::string> projected = product.project_run(full_run);

  result.satisfiable = true;
  result.lasso.prefix.assign(projected.begin(), projected.begin() + prefix.size());
  result.lasso.suffix.assign(projected.begin() + prefix.size(), projected.end());
  result.lasso.anchor = result.lasso.suffix.front();
  result.cost = cycle->length;

  for (auto s : prefix) result.product_prefix.push_back(product.state_id(s));
  for (auto s : suffix) result.product_suffix.push_back(product.state_id(s));
  result.product_anchor = product.state_id(suffix.front());

  // Lemma-2 sanity: the cycle value must equal the projected suffix cost.
  const double check = suffix_cost(ts, result.lasso.suffix, pi);
  assert(check == result.cost);
  (void)check;

  return result;
}

}  // namespace optrun
