#include "optrun/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <tuple>

namespace optrun::oracle {

// ---------------------------------------------------------------------------
// Positional LTL evaluation on a lasso

namespace {

// Truth table of each subformula over the |prefix| + |cycle| distinct
// positions. Until-like operators take a least fixpoint across the cycle,
// Release-like operators the greatest; prefix positions then fold backward.
class LassoEval {
 public:
  explicit LassoEval(const LassoWord& w)
      : prefix_len_(w.prefix.size()), total_(w.prefix.size() + w.cycle.size()), w_(w) {
    if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  }

  bool truth_at_origin(const Formula& f) { return eval(f)[0] != 0; }

 private:
  using Row = std::vector<char>;

  std::size_t nxt(std::size_t i) const { return i + 1 < total_ ? i + 1 : prefix_len_; }

  const LabelSet& letter(std::size_t i) const {
    return i < prefix_len_ ? w_.prefix[i] : w_.cycle[i - prefix_len_];
  }

  const Row& eval(const Formula& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    Row row = compute(f);
    return memo_.emplace(f, std::move(row)).first->second;
  }

  Row compute(const Formula& f) {
    using K = Formula::Kind;
    Row row(total_, 0);
    switch (f.kind()) {
      case K::True:
        std::fill(row.begin(), row.end(), 1);
        break;
      case K::Atom:
        for (std::size_t i = 0; i < total_; ++i) {
          row[i] = letter(i).count(f.atom_name()) ? 1 : 0;
        }
        break;
      case K::Not: {
        const Row sub = eval(f.lhs());
        for (std::size_t i = 0; i < total_; ++i) row[i] = !sub[i];
        break;
      }
      case K::And: {
        const Row a = eval(f.lhs());
        const Row b = eval(f.rhs());
        for (std::size_t i = 0; i < total_; ++i) row[i] = a[i] && b[i];
        break;
      }
      case K::Or: {
        const Row a = eval(f.lhs());
        const Row b = eval(f.rhs());
        for (std::size_t i = 0; i < total_; ++i) row[i] = a[i] || b[i];
        break;
      }
      case K::Implies: {
        const Row a = eval(f.lhs());
        const Row b = eval(f.rhs());
        for (std::size_t i = 0; i < total_; ++i) row[i] = !a[i] || b[i];
        break;
      }
      case K::Next: {
        const Row sub = eval(f.lhs());
        for (std::size_t i = 0; i < total_; ++i) row[i] = sub[nxt(i)];
        break;
      }
      case K::Until:
        row = fixpoint(eval(f.lhs()), eval(f.rhs()), /*least=*/true);
        break;
      case K::Eventually:
        row = fixpoint(Row(total_, 1), eval(f.lhs()), /*least=*/true);
        break;
      case K::Release:
        row = fixpoint(eval(f.lhs()), eval(f.rhs()), /*least=*/false);
        break;
      case K::Always:
        row = fixpoint(Row(total_, 0), eval(f.lhs()), /*least=*/false);
        break;
    }
    return row;
  }

  // least:  u = b or (a and X u), from all-false
  // !least: r = b and (a or X r), from all-true
  Row fixpoint(const Row& a, const Row& b, bool least) {
    Row cur(total_, least ? 0 : 1);
    const std::size_t cycle_len = total_ - prefix_len_;
    for (std::size_t sweep = 0; sweep <= cycle_len; ++sweep) {
      Row next = cur;
      bool changed = false;
      for (std::size_t i = prefix_len_; i < total_; ++i) {
        const char v = least ? (b[i] || (a[i] && cur[nxt(i)]))
                             : (b[i] && (a[i] || cur[nxt(i)]));
        changed = changed || (v != next[i]);
        next[i] = v;
      }
      cur.swap(next);
      if (!changed) break;
    }
    for (std::size_t i = prefix_len_; i-- > 0;) {
      cur[i] = least ? (b[i] || (a[i] && cur[i + 1]))
                     : (b[i] && (a[i] || cur[i + 1]));
    }
    return cur;
  }

  std::size_t prefix_len_;
  std::size_t total_;
  const LassoWord& w_;
  std::map<Formula, Row> memo_;
};

std::size_t formula_depth(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::Atom:
      return 0;
    case K::Not:
    case K::Next:
    case K::Eventually:
    case K::Always:
      return 1 + formula_depth(f.lhs());
    default:
      return 1 + std::max(formula_depth(f.lhs()), formula_depth(f.rhs()));
  }
}

}  // namespace

bool lasso_satisfies(const Formula& f, const LassoWord& w) {
  return LassoEval(w).truth_at_origin(f);
}

bool lasso_satisfies_unrolled(const Formula& f, const LassoWord& w) {
  if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  const std::size_t span = w.prefix.size() + w.cycle.size();
  const std::size_t horizon = 4 * span * (1 + formula_depth(f));
  auto letter = [&](std::size_t i) -> const LabelSet& {
    return i < w.prefix.size() ? w.prefix[i]
                               : w.cycle[(i - w.prefix.size()) % w.cycle.size()];
  };

  std::map<Formula, std::vector<char>> memo;
  auto eval = [&](auto&& self, const Formula& g) -> const std::vector<char>& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    using K = Formula::Kind;
    std::vector<char> row(horizon, 0);
    switch (g.kind()) {
      case K::True: std::fill(row.begin(), row.end(), 1); break;
      case K::Atom:
        for (std::size_t i = 0; i < horizon; ++i) row[i] = letter(i).count(g.atom_name()) ? 1 : 0;
        break;
      case K::Not: {
        const auto& s = self(self, g.lhs());
        for (std::size_t i = 0; i < horizon; ++i) row[i] = !s[i];
        break;
      }
      case K::And: {
        const auto& a = self(self, g.lhs());
        const auto& b = self(self, g.rhs());
        for (std::size_t i = 0; i < horizon; ++i) row[i] = a[i] && b[i];
        break;
      }
      case K::Or: {
        const auto& a = self(self, g.lhs());
        const auto& b = self(self, g.rhs());
        for (std::size_t i = 0; i < horizon; ++i) row[i] = a[i] || b[i];
        break;
      }
      case K::Implies: {
        const auto& a = self(self, g.lhs());
        const auto& b = self(self, g.rhs());
        for (std::size_t i = 0; i < horizon; ++i) row[i] = !a[i] || b[i];
        break;
      }
      case K::Next: {
        const auto& s = self(self, g.lhs());
        for (std::size_t i = 0; i + 1 < horizon; ++i) row[i] = s[i + 1];
        row[horizon - 1] = 0;
        break;
      }
      case K::Until: {
        const auto& a = self(self, g.lhs());
        const auto& b = self(self, g.rhs());
        char carry = 0;
        for (std::size_t i = horizon; i-- > 0;) {
          carry = b[i] || (a[i] && carry);
          row[i] = carry;
        }
        break;
      }
      case K::Eventually: {
        const auto& b = self(self, g.lhs());
        char carry = 0;
        for (std::size_t i = horizon; i-- > 0;) {
          carry = b[i] || carry;
          row[i] = carry;
        }
        break;
      }
      case K::Release: {
        const auto& a = self(self, g.lhs());
        const auto& b = self(self, g.rhs());
        char carry = 1;
        for (std::size_t i = horizon; i-- > 0;) {
          carry = b[i] && (a[i] || carry);
          row[i] = carry;
        }
        break;
      }
      case K::Always: {
        const auto& b = self(self, g.lhs());
        char carry = 1;
        for (std::size_t i = horizon; i-- > 0;) {
          carry = b[i] && carry;
          row[i] = carry;
        }
        break;
      }
    }
    return memo.emplace(g, std::move(row)).first->second;
  };
  return eval(eval, f)[0] != 0;
}

// ---------------------------------------------------------------------------
// Minimum S-bottleneck over closed walks

namespace {

struct WalkFrontier {
  double since_s;    // travel since the last S visit (or the start)
  double max_gap;    // largest completed gap between S visits
  double to_first;   // travel from the start to the first S visit
  std::size_t edges;
};

bool dominates(const WalkFrontier& a, const WalkFrontier& b) {
  return a.since_s <= b.since_s && a.max_gap <= b.max_gap &&
         a.to_first <= b.to_first && a.edges <= b.edges;
}

}  // namespace

double brute_min_s_bottleneck(const WeightedDigraph& g, const std::set<Vertex>& s_set,
                              const std::set<Vertex>& f_set, std::size_t max_edges) {
  double best = kInfinity;
  for (const Vertex f : f_set) {
    // Pareto frontier per (vertex, seen-S) pair; a new walk state is explored
    // only if nothing recorded is at least as good in every component.
    std::vector<std::array<std::vector<WalkFrontier>, 2>> memo(g.num_vertices());

    auto dfs = [&](auto&& self, Vertex v, double since_s, double max_gap,
                   double to_first, bool seen, std::size_t edges) -> void {
      for (const auto& e : g.out_edges(v)) {
        if (edges + 1 > max_edges) break;
        if (e.dst == f && seen) {
          // Closing the walk: the wrap gap runs from the last S visit
          // through the anchor back to the first one.
          const double wrap = since_s + e.weight + to_first;
          best = std::min(best, std::max(max_gap, wrap));
        }
        double nsince, nmax = max_gap, nfirst = to_first;
        bool nseen = seen;
        if (s_set.count(e.dst)) {
          if (seen) {
            nmax = std::max(max_gap, since_s + e.weight);
          } else {
            nseen = true;
            nfirst = since_s + e.weight;
          }
          nsince = 0.0;
        } else {
          nsince = since_s + e.weight;
        }
        if (nmax >= best) continue;
        if (nseen && nfirst >= best) continue;
        WalkFrontier cand{nsince, nmax, nseen ? nfirst : 0.0, edges + 1};
        auto& front = memo[e.dst][nseen ? 1 : 0];
        bool dominated = false;
        for (const auto& old : front) {
          if (dominates(old, cand)) {
            dominated = true;
            break;
          }
        }
        if (dominated) continue;
        std::erase_if(front, [&](const WalkFrontier& old) { return dominates(cand, old); });
        front.push_back(cand);
        self(self, e.dst, nsince, nmax, nfirst, nseen, edges + 1);
      }
    };

    const bool start_in_s = s_set.count(f) != 0;
    dfs(dfs, f, 0.0, 0.0, 0.0, start_in_s, 0);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Minimum lasso cost by enumeration

namespace {

// Max gap between pi-instances over one period of the repeated cycle,
// wrap included. Written against the raw walk so it shares nothing with the
// planner's evaluators.
double cycle_gap_cost(const TransitionSystem& ts, const std::vector<std::uint32_t>& cyc,
                      const std::string& pi) {
  std::vector<double> times;
  double t = 0.0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (ts.label(cyc[i]).count(pi)) times.push_back(t);
    t += ts.weight(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  if (times.empty()) return kInfinity;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    best = std::max(best, times[i + 1] - times[i]);
  }
  return std::max(best, t - times.back() + times.front());
}

}  // namespace

double brute_optimal_cost(const TransitionSystem& ts, const Formula& phi,
                          const std::string& pi, std::size_t max_suffix_edges,
                          std::size_t max_prefix_edges) {
  const auto n = static_cast<std::uint32_t>(ts.num_states());

  // All repeatable cycle words per anchor, each kept at its cheapest cost.
  struct Candidate {
    double cost;
    std::uint32_t anchor;
    Word word;
  };
  std::vector<Candidate> candidates;
  {
    std::map<std::pair<std::uint32_t, Word>, double> cheapest;
    std::vector<std::uint32_t> walk;
    for (std::uint32_t anchor = 0; anchor < n; ++anchor) {
      walk.assign(1, anchor);
      auto dfs = [&](auto&& self) -> void {
        if (walk.size() > max_suffix_edges) return;
        const std::uint32_t cur = walk.back();
        for (const auto& e : ts.out_edges(cur)) {
          if (e.dst == anchor) {
            const double cost = cycle_gap_cost(ts, walk, pi);
            Word word;
            for (auto q : walk) word.push_back(ts.label(q));
            auto key = std::make_pair(anchor, std::move(word));
            auto it = cheapest.find(key);
            if (it == cheapest.end() || cost < it->second) {
              cheapest.insert_or_assign(std::move(key), cost);
            }
          }
          walk.push_back(e.dst);
          self(self);
          walk.pop_back();
        }
      };
      dfs(dfs);
    }
    for (auto& [key, cost] : cheapest) {
      candidates.push_back(Candidate{cost, key.first, key.second});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.word < b.word;
  });

  // All prefix words reaching each anchor (anchor excluded from the word).
  std::vector<std::set<Word>> prefixes(n);
  {
    std::vector<std::uint32_t> walk{ts.initial_state()};
    Word word;
    auto record = [&]() {
      prefixes[walk.back()].insert(word);
    };
    auto dfs = [&](auto&& self) -> void {
      record();
      if (walk.size() > max_prefix_edges) return;
      word.push_back(ts.label(walk.back()));
      for (const auto& e : ts.out_edges(walk.back())) {
        walk.push_back(e.dst);
        self(self);
        walk.pop_back();
      }
      word.pop_back();
    };
    dfs(dfs);
  }

  double best = kInfinity;
  std::map<std::pair<Word, Word>, bool> sat_memo;
  for (const auto& cand : candidates) {
    if (cand.cost >= best) break;
    for (const auto& pw : prefixes[cand.anchor]) {
      auto key = std::make_pair(pw, cand.word);
      auto it = sat_memo.find(key);
      bool ok;
      if (it != sat_memo.end()) {
        ok = it->second;
      } else {
        ok = lasso_satisfies(phi, LassoWord{pw, cand.word});
        sat_memo.emplace(std::move(key), ok);
      }
      if (ok) {
        best = cand.cost;
        break;
      }
    }
  }
  return best;
}

}  // namespace optrun::oracle
