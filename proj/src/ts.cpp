#include "optrun/ts.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace optrun {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

TransitionSystem TransitionSystem::parse(const std::string& text) {
  std::vector<std::string> prop_order;
  std::set<std::string> props;
  std::vector<std::pair<std::string, LabelSet>> states;
  std::optional<std::string> init;
  std::vector<std::tuple<std::string, std::string, double>> trans;
  std::set<std::pair<std::string, std::string>> trans_seen;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "props") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_identifier(toks[i])) {
          throw ParseError("invalid proposition name '" + toks[i] + "'", lineno, 1);
        }
        if (props.insert(toks[i]).second) prop_order.push_back(toks[i]);
      }
    } else if (kw == "state") {
      if (toks.size() < 2) throw ParseError("state line needs an id", lineno, 1);
      LabelSet label(toks.begin() + 2, toks.end());
      states.emplace_back(toks[1], std::move(label));
    } else if (kw == "init") {
      if (toks.size() != 2) throw ParseError("init line needs exactly one state", lineno, 1);
      if (init) throw ParseError("duplicate init line", lineno, 1);
      init = toks[1];
    } else if (kw == "trans") {
      if (toks.size() != 4) {
        throw ParseError("trans line needs source, destination and weight", lineno, 1);
      }
      double w;
      try {
        std::size_t used = 0;
        w = std::stod(toks[3], &used);
        if (used != toks[3].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("malformed weight '" + toks[3] + "'", lineno, 1);
      }
      if (!trans_seen.emplace(toks[1], toks[2]).second) {
        throw ParseError("duplicate transition " + toks[1] + " -> " + toks[2], lineno, 1);
      }
      trans.emplace_back(toks[1], toks[2], w);
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno, 1);
    }
  }
  if (!init) throw ParseError("missing init line", lineno, 1);

  TransitionSystem ts;
  ts.prop_order_ = std::move(prop_order);
  ts.propositions_ = std::move(props);
  for (auto& [name, label] : states) {
    if (!ts.index_.emplace(name, static_cast<std::uint32_t>(ts.states_.size())).second) {
      throw ParseError("duplicate state id '" + name + "'", 0, 0);
    }
    ts.states_.push_back(name);
    ts.labels_.push_back(std::move(label));
  }
  auto init_it = ts.index_.find(*init);
  if (init_it == ts.index_.end()) {
    throw ParseError("initial state '" + *init + "' is not declared", 0, 0);
  }
  ts.initial_ = init_it->second;
  ts.out_.resize(ts.states_.size());
  for (const auto& [src, dst, w] : trans) {
    auto si = ts.index_.find(src);
    auto di = ts.index_.find(dst);
    if (si == ts.index_.end()) {
      throw ParseError("transition from unknown state '" + src + "'", 0, 0);
    }
    if (di == ts.index_.end()) {
      throw ParseError("transition to unknown state '" + dst + "'", 0, 0);
    }
    ts.out_[si->second].push_back(Edge{di->second, w});
  }
  for (auto& row : ts.out_) {
    std::sort(row.begin(), row.end(),
              [](const Edge& a, const Edge& b) { return a.dst < b.dst; });
  }
  ts.validate();
  return ts;
}

TransitionSystem TransitionSystem::build(
    std::vector<std::string> propositions,
    std::vector<std::pair<std::string, LabelSet>> states,
    const std::string& initial,
    std::vector<std::tuple<std::string, std::string, double>> transitions) {
  std::ostringstream os;
  os << "props";
  for (const auto& p : propositions) os << ' ' << p;
  os << '\n';
  for (const auto& [name, label] : states) {
    os << "state " << name;
    for (const auto& p : label) os << ' ' << p;
    os << '\n';
  }
  os << "init " << initial << '\n';
  os.precision(17);
  for (const auto& [src, dst, w] : transitions) {
    os << "trans " << src << ' ' << dst << ' ' << w << '\n';
  }
  return parse(os.str());
}

void TransitionSystem::validate() const {
  for (std::size_t q = 0; q < states_.size(); ++q) {
    for (const auto& p : labels_[q]) {
      if (!propositions_.count(p)) {
        throw ParseError("state '" + states_[q] + "' uses undeclared proposition '" +
                             p + "'",
                         0, 0);
      }
    }
    if (out_[q].empty()) {
      throw ParseError("blocking state '" + states_[q] + "' has no outgoing transition",
                       0, 0);
    }
    for (const auto& e : out_[q]) {
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw ParseError("transition " + states_[q] + " -> " + states_[e.dst] +
                             " has non-positive or non-finite weight",
                         0, 0);
      }
    }
  }
}

std::size_t TransitionSystem::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : out_) n += row.size();
  return n;
}

std::optional<std::uint32_t> TransitionSystem::find_state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t TransitionSystem::state_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown state '" + name + "'");
  return it->second;
}

bool TransitionSystem::has_transition(std::uint32_t src, std::uint32_t dst) const {
  const auto& row = out_[src];
  auto it = std::lower_bound(row.begin(), row.end(), dst,
                             [](const Edge& e, std::uint32_t d) { return e.dst < d; });
  return it != row.end() && it->dst == dst;
}

double TransitionSystem::weight(std::uint32_t src, std::uint32_t dst) const {
  const auto& row = out_[src];
  auto it = std::lower_bound(row.begin(), row.end(), dst,
                             [](const Edge& e, std::uint32_t d) { return e.dst < d; });
  if (it == row.end() || it->dst != dst) {
    throw std::out_of_range("no transition " + states_[src] + " -> " + states_[dst]);
  }
  return it->weight;
}

TransitionSystem TransitionSystem::with_extra_label(
    const std::string& prop, const std::vector<std::string>& when_any_of) const {
  TransitionSystem ts = *this;
  if (ts.propositions_.insert(prop).second) ts.prop_order_.push_back(prop);
  for (std::size_t q = 0; q < ts.states_.size(); ++q) {
    for (const auto& trigger : when_any_of) {
      if (ts.labels_[q].count(trigger)) {
        ts.labels_[q].insert(prop);
        break;
      }
    }
  }
  return ts;
}

std::string TransitionSystem::print() const {
  std::ostringstream os;
  os << "props";
  for (const auto& p : prop_order_) os << ' ' << p;
  os << '\n';
  for (std::size_t q = 0; q < states_.size(); ++q) {
    os << "state " << states_[q];
    for (const auto& p : labels_[q]) os << ' ' << p;
    os << '\n';
  }
  os << "init " << states_[initial_] << '\n';
  os.precision(17);
  for (std::size_t q = 0; q < states_.size(); ++q) {
    for (const auto& e : out_[q]) {
      os << "trans " << states_[q] << ' ' << states_[e.dst] << ' ' << e.weight << '\n';
    }
  }
  return os.str();
}

std::string TransitionSystem::to_dot() const {
  std::ostringstream os;
  os << "digraph ts {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < states_.size(); ++q) {
    os << "  \"" << states_[q] << "\" [label=\"" << states_[q];
    if (!labels_[q].empty()) {
      os << "\\n{";
      bool first = true;
      for (const auto& p : labels_[q]) {
        if (!first) os << ",";
        os << p;
        first = false;
      }
      os << "}";
    }
    os << "\"";
    if (q == initial_) os << ", penwidth=2";
    os << "];\n";
  }
  os.precision(17);
  for (std::size_t q = 0; q < states_.size(); ++q) {
    for (const auto& e : out_[q]) {
      os << "  \"" << states_[q] << "\" -> \"" << states_[e.dst] << "\" [label=\""
         << e.weight << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

namespace {

std::vector<std::uint32_t> resolve_run(const TransitionSystem& ts,
                                       const std::vector<std::string>& run) {
  std::vector<std::uint32_t> idx;
  idx.reserve(run.size());
  for (const auto& name : run) idx.push_back(ts.state_index(name));
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    if (!ts.has_transition(idx[i], idx[i + 1])) {
      throw std::invalid_argument("invalid transition at index " + std::to_string(i) +
                                  ": " + run[i] + " -> " + run[i + 1]);
    }
  }
  return idx;
}

}  // namespace

Word run_word(const TransitionSystem& ts, const std::vector<std::string>& run,
              bool system_run) {
  if (run.empty()) throw std::invalid_argument("empty run");
  auto idx = resolve_run(ts, run);
  if (system_run && idx.front() != ts.initial_state()) {
    throw std::invalid_argument("system run must start at the initial state");
  }
  Word w;
  w.reserve(idx.size());
  for (auto q : idx) w.push_back(ts.label(q));
  return w;
}

std::vector<double> run_times(const TransitionSystem& ts,
                              const std::vector<std::string>& run) {
  if (run.empty()) throw std::invalid_argument("empty run");
  auto idx = resolve_run(ts, run);
  std::vector<double> t{0.0};
  t.reserve(idx.size());
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    t.push_back(t.back() + ts.weight(idx[i], idx[i + 1]));
  }
  return t;
}

}  // namespace optrun
