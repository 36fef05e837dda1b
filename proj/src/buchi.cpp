#include "optrun/buchi.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace optrun {

// ---------------------------------------------------------------------------
// Guard

std::optional<Guard> Guard::make(std::vector<std::string> pos,
                                 std::vector<std::string> neg) {
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
  for (const auto& p : pos) {
    if (std::binary_search(neg.begin(), neg.end(), p)) return std::nullopt;
  }
  Guard g;
  g.pos_ = std::move(pos);
  g.neg_ = std::move(neg);
  return g;
}

Guard Guard::top() { return Guard{}; }

bool Guard::satisfied_by(const LabelSet& letter) const {
  for (const auto& p : pos_) {
    if (!letter.count(p)) return false;
  }
  for (const auto& n : neg_) {
    if (letter.count(n)) return false;
  }
  return true;
}

std::string Guard::to_string() const {
  if (is_top()) return "1";
  std::string out;
  for (const auto& p : pos_) {
    if (!out.empty()) out += " && ";
    out += p;
  }
  for (const auto& n : neg_) {
    if (!out.empty()) out += " && ";
    out += "!" + n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// BuchiAutomaton

BuchiAutomaton::BuchiAutomaton(std::size_t num_states,
                               std::vector<std::uint32_t> initial,
                               std::vector<std::uint32_t> accepting,
                               std::vector<BuchiTransition> transitions,
                               std::set<std::string> alphabet)
    : num_states_(num_states),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)),
      transitions_(std::move(transitions)),
      alphabet_(std::move(alphabet)) {
  auto check_states = [&](std::vector<std::uint32_t>& v, const char* what) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.back() >= num_states_) {
      throw std::invalid_argument(std::string(what) + " state out of range");
    }
  };
  check_states(initial_, "initial");
  check_states(accepting_, "accepting");

  auto key = [](const BuchiTransition& t) {
    return std::tie(t.src, t.dst, t.guard);
  };
  std::sort(transitions_.begin(), transitions_.end(),
            [&](const BuchiTransition& a, const BuchiTransition& b) {
              return key(a) < key(b);
            });
  transitions_.erase(
      std::unique(transitions_.begin(), transitions_.end(),
                  [&](const BuchiTransition& a, const BuchiTransition& b) {
                    return key(a) == key(b);
                  }),
      transitions_.end());
  for (const auto& t : transitions_) {
    if (t.src >= num_states_ || t.dst >= num_states_) {
      throw std::invalid_argument("transition endpoint out of range");
    }
  }
  row_begin_.assign(num_states_ + 1, 0);
  for (const auto& t : transitions_) row_begin_[t.src + 1]++;
  for (std::size_t i = 1; i <= num_states_; ++i) row_begin_[i] += row_begin_[i - 1];
}

bool BuchiAutomaton::is_initial(std::uint32_t s) const {
  return std::binary_search(initial_.begin(), initial_.end(), s);
}

bool BuchiAutomaton::is_accepting(std::uint32_t s) const {
  return std::binary_search(accepting_.begin(), accepting_.end(), s);
}

std::span<const BuchiTransition> BuchiAutomaton::transitions_from(
    std::uint32_t s) const {
  return {transitions_.data() + row_begin_[s], transitions_.data() + row_begin_[s + 1]};
}

std::string BuchiAutomaton::to_dot() const {
  std::ostringstream os;
  os << "digraph buchi {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  __start [shape=point];\n";
  for (std::size_t s = 0; s < num_states_; ++s) {
    os << "  " << state_id(s);
    if (is_accepting(static_cast<std::uint32_t>(s))) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (auto s : initial_) os << "  __start -> " << state_id(s) << ";\n";
  for (const auto& t : transitions_) {
    os << "  " << state_id(t.src) << " -> " << state_id(t.dst) << " [label=\""
       << t.guard.to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

TranslationLimitError::TranslationLimitError(std::size_t limit)
    : std::runtime_error("translation exceeded the state limit of " +
                         std::to_string(limit)) {}

// ---------------------------------------------------------------------------
// LTL -> Buchi translation

namespace {

using ObligationSet = std::vector<Formula>;  // sorted, unique

void collect_untils(const Formula& f, std::set<Formula>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::Atom:
      return;
    case K::Not:
    case K::Next:
      collect_untils(f.lhs(), out);
      return;
    case K::Until:
      out.insert(f);
      collect_untils(f.lhs(), out);
      collect_untils(f.rhs(), out);
      return;
    default:
      collect_untils(f.lhs(), out);
      collect_untils(f.rhs(), out);
      return;
  }
}

// One consistent way of satisfying an obligation set "now": literal
// constraints on the current letter plus obligations passed to the next
// position. `processed` keeps every formula expanded along the way; it is
// what the acceptance marks are read off from.
struct Cover {
  std::vector<std::string> pos, neg;
  std::set<Formula> next;
  std::set<Formula> processed;
};

void expand_cover(std::vector<Formula> todo, Cover cur, std::vector<Cover>& out) {
  using K = Formula::Kind;
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    if (cur.processed.count(f)) continue;
    cur.processed.insert(f);
    switch (f.kind()) {
      case K::True:
        break;
      case K::Atom: {
        const std::string& p = f.atom_name();
        if (std::find(cur.neg.begin(), cur.neg.end(), p) != cur.neg.end()) return;
        cur.pos.push_back(p);
        break;
      }
      case K::Not: {
        if (f.is_false_literal()) return;  // contradiction
        const std::string& p = f.lhs().atom_name();
        if (std::find(cur.pos.begin(), cur.pos.end(), p) != cur.pos.end()) return;
        cur.neg.push_back(p);
        break;
      }
      case K::And:
        todo.push_back(f.lhs());
        todo.push_back(f.rhs());
        break;
      case K::Or: {
        auto t1 = todo;
        t1.push_back(f.lhs());
        expand_cover(std::move(t1), cur, out);
        todo.push_back(f.rhs());
        expand_cover(std::move(todo), std::move(cur), out);
        return;
      }
      case K::Next:
        cur.next.insert(f.lhs());
        break;
      case K::Until: {
        // a U b == b or (a and X(a U b))
        auto t1 = todo;
        t1.push_back(f.rhs());
        expand_cover(std::move(t1), cur, out);
        todo.push_back(f.lhs());
        cur.next.insert(f);
        expand_cover(std::move(todo), std::move(cur), out);
        return;
      }
      case K::Release: {
        // a R b == (a and b) or (b and X(a R b))
        auto t1 = todo;
        t1.push_back(f.lhs());
        t1.push_back(f.rhs());
        expand_cover(std::move(t1), cur, out);
        todo.push_back(f.rhs());
        cur.next.insert(f);
        expand_cover(std::move(todo), std::move(cur), out);
        return;
      }
      default:
        assert(false && "sugar node after to_nnf");
        return;
    }
  }
  out.push_back(std::move(cur));
}

struct TgbaEdge {
  std::uint32_t src;
  Guard guard;
  std::uint32_t dst;
  std::uint64_t marks;  // bit i: edge belongs to acceptance set of until #i
};

BuchiAutomaton single_state_automaton(bool accepting, std::set<std::string> alphabet) {
  std::vector<BuchiTransition> trans{{0, Guard::top(), 0}};
  return BuchiAutomaton(1, {0}, accepting ? std::vector<std::uint32_t>{0}
                                          : std::vector<std::uint32_t>{},
                        std::move(trans), std::move(alphabet));
}

}  // namespace

BuchiAutomaton translate(const Formula& f, std::set<std::string> alphabet,
                         std::size_t max_states) {
  for (const auto& a : atoms_of(f)) {
    if (!alphabet.count(a)) {
      throw std::invalid_argument("proposition '" + a +
                                  "' is not part of the declared alphabet");
    }
  }
  const Formula phi = to_nnf(f);
  if (phi.is_true()) return single_state_automaton(true, std::move(alphabet));
  if (phi.is_false_literal()) return single_state_automaton(false, std::move(alphabet));

  std::set<Formula> until_set;
  collect_untils(phi, until_set);
  const std::vector<Formula> untils(until_set.begin(), until_set.end());
  const std::size_t k = untils.size();
  if (k > 64) throw TranslationLimitError(max_states);

  // Phase 1: expand obligation sets into a transition-marked generalized
  // automaton.
  std::map<ObligationSet, std::uint32_t> state_index;
  std::vector<ObligationSet> states;
  std::vector<std::vector<TgbaEdge>> edges;
  std::deque<std::uint32_t> queue;

  auto intern = [&](const ObligationSet& ob) {
    auto it = state_index.find(ob);
    if (it != state_index.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(states.size());
    if (states.size() >= max_states) throw TranslationLimitError(max_states);
    state_index.emplace(ob, idx);
    states.push_back(ob);
    edges.emplace_back();
    queue.push_back(idx);
    return idx;
  };

  intern(ObligationSet{phi});
  while (!queue.empty()) {
    const std::uint32_t src = queue.front();
    queue.pop_front();
    std::vector<Formula> todo(states[src].rbegin(), states[src].rend());
    std::vector<Cover> covers;
    expand_cover(std::move(todo), Cover{}, covers);

    std::set<std::tuple<std::vector<std::string>, std::vector<std::string>,
                        ObligationSet, std::uint64_t>>
        seen;
    for (auto& c : covers) {
      auto guard = Guard::make(c.pos, c.neg);
      assert(guard.has_value());
      ObligationSet next(c.next.begin(), c.next.end());
      std::uint64_t marks = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const bool postponed = c.next.count(untils[i]) != 0;
        const bool fulfilled_now = c.processed.count(untils[i].rhs()) != 0;
        if (!postponed || fulfilled_now) marks |= (std::uint64_t{1} << i);
      }
      if (!seen.emplace(guard->positive(), guard->negative(), next, marks).second) {
        continue;
      }
      const std::uint32_t dst = intern(next);
      edges[src].push_back(TgbaEdge{src, *guard, dst, marks});
    }
  }

  // Phase 2: counter-based degeneralization. Level j means acceptance sets
  // 0..j-1 have been collected since the last reset; reaching level k is
  // accepting and resets the counter.
  std::vector<BuchiTransition> ba_trans;
  std::vector<std::uint32_t> ba_initial, ba_accepting;
  std::size_t ba_states = 0;

  if (k == 0) {
    ba_states = states.size();
    ba_initial = {0};
    for (std::uint32_t s = 0; s < ba_states; ++s) ba_accepting.push_back(s);
    for (const auto& row : edges) {
      for (const auto& e : row) ba_trans.push_back({e.src, e.guard, e.dst});
    }
  } else {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ba_index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ba_nodes;
    std::deque<std::uint32_t> ba_queue;
    auto intern_ba = [&](std::uint32_t ob, std::uint32_t level) {
      auto key = std::make_pair(ob, level);
      auto it = ba_index.find(key);
      if (it != ba_index.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(ba_nodes.size());
      if (ba_nodes.size() >= max_states) throw TranslationLimitError(max_states);
      ba_index.emplace(key, idx);
      ba_nodes.push_back(key);
      ba_queue.push_back(idx);
      return idx;
    };
    ba_initial.push_back(intern_ba(0, 0));
    while (!ba_queue.empty()) {
      const std::uint32_t cur = ba_queue.front();
      ba_queue.pop_front();
      const auto [ob, level] = ba_nodes[cur];
      const std::uint32_t base = (level == k) ? 0 : level;
      for (const auto& e : edges[ob]) {
        std::uint32_t j = base;
        while (j < k && (e.marks >> j) & 1) ++j;
        const std::uint32_t dst = intern_ba(e.dst, j);
        ba_trans.push_back({cur, e.guard, dst});
      }
    }
    ba_states = ba_nodes.size();
    for (std::uint32_t s = 0; s < ba_states; ++s) {
      if (ba_nodes[s].second == k) ba_accepting.push_back(s);
    }
  }

  return BuchiAutomaton(ba_states, std::move(ba_initial), std::move(ba_accepting),
                        std::move(ba_trans), std::move(alphabet));
}

BuchiAutomaton translate(const Formula& f) { return translate(f, atoms_of(f)); }

// ---------------------------------------------------------------------------
// Lasso acceptance

bool accepts_lasso(const BuchiAutomaton& b, const Word& prefix, const Word& cycle) {
  if (cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  const std::size_t p = prefix.size();
  const std::size_t n = p + cycle.size();
  const std::size_t num_states = b.num_states();
  auto letter = [&](std::size_t i) -> const LabelSet& {
    return i < p ? prefix[i] : cycle[i - p];
  };
  auto nxt = [&](std::size_t i) { return i + 1 < n ? i + 1 : p; };
  auto node = [&](std::uint32_t s, std::size_t i) { return s * n + i; };

  // Unroll the automaton against the lasso positions and look for a
  // reachable accepting node, in the cycle region, that lies on a loop.
  auto bfs = [&](std::vector<std::size_t> start, std::vector<char>& seen) {
    std::deque<std::size_t> q(start.begin(), start.end());
    for (auto v : start) seen[v] = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop_front();
      const auto s = static_cast<std::uint32_t>(v / n);
      const std::size_t i = v % n;
      for (const auto& t : b.transitions_from(s)) {
        if (!t.guard.satisfied_by(letter(i))) continue;
        const std::size_t w = node(t.dst, nxt(i));
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
  };

  std::vector<char> reach(num_states * n, 0);
  std::vector<std::size_t> init;
  for (auto s : b.initial_states()) init.push_back(node(s, 0));
  bfs(std::move(init), reach);

  for (auto s : b.accepting_states()) {
    for (std::size_t i = p; i < n; ++i) {
      if (!reach[node(s, i)]) continue;
      // One step out of (s, i), then reachability back to it.
      std::vector<std::size_t> succs;
      for (const auto& t : b.transitions_from(s)) {
        if (t.guard.satisfied_by(letter(i))) succs.push_back(node(t.dst, nxt(i)));
      }
      std::vector<char> seen(num_states * n, 0);
      bfs(std::move(succs), seen);
      if (seen[node(s, i)]) return true;
    }
  }
  return false;
}

}  // namespace optrun
