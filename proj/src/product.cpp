#include "optrun/product.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace optrun {

ProductAutomaton::ProductAutomaton(TransitionSystem ts) : ts_(std::move(ts)) {}

ProductAutomaton ProductAutomaton::build(const TransitionSystem& ts,
                                         const BuchiAutomaton& b,
                                         const std::string& pi) {
  if (!ts.propositions().count(pi)) {
    throw std::invalid_argument("optimizing proposition '" + pi +
                                "' is not declared in the transition system");
  }
  if (b.alphabet() != ts.propositions()) {
    throw std::invalid_argument(
        "automaton alphabet does not match the transition system propositions");
  }

  ProductAutomaton p(ts);
  p.pi_ = pi;
  const auto nq = static_cast<std::uint32_t>(ts.num_states());
  const auto ns = static_cast<std::uint32_t>(b.num_states());
  p.buchi_names_.reserve(ns);
  for (std::uint32_t s = 0; s < ns; ++s) p.buchi_names_.push_back(b.state_id(s));

  // Full grid, q-major: state (q, s) has index q * |S| + s.
  p.pairs_.reserve(static_cast<std::size_t>(nq) * ns);
  for (std::uint32_t q = 0; q < nq; ++q) {
    for (std::uint32_t s = 0; s < ns; ++s) p.pairs_.emplace_back(q, s);
  }
  const auto index_of = [ns](std::uint32_t q, std::uint32_t s) { return q * ns + s; };

  p.accepting_.resize(p.pairs_.size());
  p.opt_.resize(p.pairs_.size());
  for (std::uint32_t q = 0; q < nq; ++q) {
    const bool holds_pi = ts.label(q).count(pi) != 0;
    for (std::uint32_t s = 0; s < ns; ++s) {
      p.accepting_[index_of(q, s)] = b.is_accepting(s);
      p.opt_[index_of(q, s)] = holds_pi;
    }
  }

  for (auto s0 : b.initial_states()) {
    p.initial_.push_back(index_of(ts.initial_state(), s0));
  }
  std::sort(p.initial_.begin(), p.initial_.end());

  p.out_.resize(p.pairs_.size());
  for (std::uint32_t q = 0; q < nq; ++q) {
    const LabelSet& source_label = ts.label(q);
    for (std::uint32_t s = 0; s < ns; ++s) {
      auto& row = p.out_[index_of(q, s)];
      for (const auto& bt : b.transitions_from(s)) {
        if (!bt.guard.satisfied_by(source_label)) continue;
        for (const auto& te : ts.out_edges(q)) {
          row.push_back(Edge{index_of(te.dst, bt.dst), te.weight});
        }
      }
      std::sort(row.begin(), row.end(),
                [](const Edge& a, const Edge& b2) { return a.dst < b2.dst; });
      row.erase(std::unique(row.begin(), row.end(),
                            [](const Edge& a, const Edge& b2) { return a.dst == b2.dst; }),
                row.end());
    }
  }
  return p;
}

std::size_t ProductAutomaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : out_) n += row.size();
  return n;
}

std::string ProductAutomaton::state_id(std::uint32_t p) const {
  return "(" + ts_.state_name(pairs_[p].first) + "," + buchi_names_[pairs_[p].second] +
         ")";
}

std::vector<std::uint32_t> ProductAutomaton::accepting_list() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < accepting_.size(); ++i) {
    if (accepting_[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::uint32_t> ProductAutomaton::opt_list() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < opt_.size(); ++i) {
    if (opt_[i]) out.push_back(i);
  }
  return out;
}

bool ProductAutomaton::has_edge(std::uint32_t src, std::uint32_t dst) const {
  const auto& row = out_[src];
  auto it = std::lower_bound(row.begin(), row.end(), dst,
                             [](const Edge& e, std::uint32_t d) { return e.dst < d; });
  return it != row.end() && it->dst == dst;
}

ProductAutomaton ProductAutomaton::reachable_part() const {
  std::vector<char> seen(pairs_.size(), 0);
  std::deque<std::uint32_t> queue;
  for (auto i : initial_) {
    seen[i] = 1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& e : out_[v]) {
      if (!seen[e.dst]) {
        seen[e.dst] = 1;
        queue.push_back(e.dst);
      }
    }
  }

  std::vector<std::uint32_t> remap(pairs_.size(), kNoVertex);
  ProductAutomaton r(ts_);
  r.pi_ = pi_;
  r.buchi_names_ = buchi_names_;
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    if (!seen[i]) continue;
    remap[i] = static_cast<std::uint32_t>(r.pairs_.size());
    r.pairs_.push_back(pairs_[i]);
    r.accepting_.push_back(accepting_[i]);
    r.opt_.push_back(opt_[i]);
  }
  r.out_.resize(r.pairs_.size());
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    if (!seen[i]) continue;
    auto& row = r.out_[remap[i]];
    for (const auto& e : out_[i]) {
      assert(seen[e.dst]);
      row.push_back(Edge{remap[e.dst], e.weight});
    }
  }
  for (auto i : initial_) r.initial_.push_back(remap[i]);
  std::sort(r.initial_.begin(), r.initial_.end());
  return r;
}

std::vector<std::string> ProductAutomaton::project_run(
    const std::vector<std::uint32_t>& run, bool require_initial) const {
  if (run.empty()) throw std::invalid_argument("empty product run");
  for (auto p : run) {
    if (p >= pairs_.size()) throw std::invalid_argument("product state out of range");
  }
  if (require_initial &&
      !std::binary_search(initial_.begin(), initial_.end(), run.front())) {
    throw std::invalid_argument("product run does not start in an initial state");
  }
  for (std::size_t i = 0; i + 1 < run.size(); ++i) {
    if (!has_edge(run[i], run[i + 1])) {
      throw std::invalid_argument("invalid product transition at index " +
                                  std::to_string(i));
    }
  }
  std::vector<std::string> out;
  out.reserve(run.size());
  for (auto p : run) out.push_back(ts_.state_name(pairs_[p].first));
  return out;
}

WeightedDigraph ProductAutomaton::to_graph() const {
  WeightedDigraph g;
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    const Vertex v = g.intern(state_id(i));
    assert(v == i);
    (void)v;
  }
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    for (const auto& e : out_[i]) g.add_edge(i, e.dst, e.weight);
  }
  return g;
}

std::string ProductAutomaton::to_dot() const {
  std::ostringstream os;
  os << "digraph product {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  __start [shape=point];\n";
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    os << "  \"" << state_id(i) << "\" [";
    os << "shape=" << (accepting_[i] ? "doublecircle" : "circle");
    if (opt_[i]) os << ", style=filled, fillcolor=lightgray";
    os << "];\n";
  }
  for (auto i : initial_) os << "  __start -> \"" << state_id(i) << "\";\n";
  os.precision(17);
  for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
    for (const auto& e : out_[i]) {
      os << "  \"" << state_id(i) << "\" -> \"" << state_id(e.dst) << "\" [label=\""
         << e.weight << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace optrun
