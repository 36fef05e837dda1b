#include "optrun/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace optrun {

// ---------------------------------------------------------------------------
// WeightedDigraph

Vertex WeightedDigraph::intern(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const auto v = static_cast<Vertex>(ids_.size());
  index_.emplace(id, v);
  ids_.push_back(id);
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

std::optional<Vertex> WeightedDigraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void WeightedDigraph::add_edge(Vertex src, Vertex dst, double weight) {
  if (src >= ids_.size() || dst >= ids_.size()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("edge weight must be positive and finite");
  }
  for (auto& e : out_[src]) {
    if (e.dst == dst) {  // parallel edge: keep the lighter one
      if (weight < e.weight) {
        e.weight = weight;
        for (auto& r : in_[dst]) {
          if (r.dst == src) r.weight = std::min(r.weight, weight);
        }
      }
      return;
    }
  }
  out_[src].push_back(Edge{dst, weight});
  in_[dst].push_back(Edge{src, weight});
  ++num_edges_;
}

std::optional<double> WeightedDigraph::edge_weight(Vertex src, Vertex dst) const {
  for (const auto& e : out_[src]) {
    if (e.dst == dst) return e.weight;
  }
  return std::nullopt;
}

WeightedDigraph WeightedDigraph::parse(const std::string& text) {
  WeightedDigraph g;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertex") {
      std::string id;
      if (!(ls >> id)) {
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": vertex line needs an id");
      }
      g.intern(id);
    } else if (kw == "edge") {
      std::string src, dst;
      double w;
      if (!(ls >> src >> dst >> w)) {
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": edge line needs source, destination, weight");
      }
      g.add_edge(g.intern(src), g.intern(dst), w);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": unknown directive '" + kw + "'");
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Dijkstra, sum and bottleneck flavors

namespace {

struct SearchResult {
  std::vector<double> dist;
  std::vector<Vertex> pred;
};

// Single-source search. `bottleneck` switches the path objective from the
// sum of edge weights to the maximum edge weight; both are monotone along a
// path, which is all Dijkstra needs. Ties in the queue break on vertex
// index, so results are deterministic.
SearchResult dijkstra(const WeightedDigraph& g, Vertex source, bool bottleneck) {
  const std::size_t n = g.num_vertices();
  SearchResult r{std::vector<double>(n, kInfinity), std::vector<Vertex>(n, kNoVertex)};
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  r.dist[source] = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > r.dist[v]) continue;
    for (const auto& e : g.out_edges(v)) {
      const double nd = bottleneck ? std::max(d, e.weight) : d + e.weight;
      if (nd < r.dist[e.dst]) {
        r.dist[e.dst] = nd;
        r.pred[e.dst] = v;
        pq.emplace(nd, e.dst);
      }
    }
  }
  return r;
}

}  // namespace

PathTable single_source_tables(const WeightedDigraph& g,
                               std::span<const Vertex> sources,
                               std::span<const Vertex> dests, bool bottleneck) {
  PathTable t;
  t.graph_ = &g;
  t.sources_.assign(sources.begin(), sources.end());
  t.dests_.assign(dests.begin(), dests.end());
  t.dist_.resize(sources.size());
  t.pred_.resize(sources.size());
  t.self_via_.assign(sources.size(), kNoVertex);

  for (std::size_t i = 0; i < t.sources_.size(); ++i) {
    const Vertex a = t.sources_[i];
    SearchResult r = dijkstra(g, a, bottleneck);

    // Value from a to itself: best cycle through a, closed by an in-edge.
    double self_best = kInfinity;
    Vertex self_via = kNoVertex;
    for (const auto& e : g.in_edges(a)) {
      if (r.dist[e.dst] == kInfinity) continue;
      const double cand =
          bottleneck ? std::max(r.dist[e.dst], e.weight) : r.dist[e.dst] + e.weight;
      if (cand < self_best) {
        self_best = cand;
        self_via = e.dst;
      }
    }

    t.dist_[i].resize(t.dests_.size());
    for (std::size_t j = 0; j < t.dests_.size(); ++j) {
      const Vertex b = t.dests_[j];
      t.dist_[i][j] = (b == a) ? self_best : r.dist[b];
    }
    t.pred_[i] = std::move(r.pred);
    t.self_via_[i] = self_via;
  }
  return t;
}

PathTable shortest_path(const WeightedDigraph& g, std::span<const Vertex> sources,
                        std::span<const Vertex> dests) {
  return single_source_tables(g, sources, dests, false);
}

PathTable shortest_bot_path(const WeightedDigraph& g, std::span<const Vertex> sources,
                            std::span<const Vertex> dests) {
  return single_source_tables(g, sources, dests, true);
}

std::vector<Vertex> PathTable::path(std::size_t i, std::size_t j) const {
  if (dist_[i][j] == kInfinity) return {};
  const Vertex a = sources_[i];
  const Vertex b = dests_[j];
  std::vector<Vertex> out;
  if (a == b) {
    Vertex cur = self_via_[i];
    assert(cur != kNoVertex);
    while (cur != a) {
      out.push_back(cur);
      cur = pred_[i][cur];
      assert(cur != kNoVertex);
    }
    out.push_back(a);
    std::reverse(out.begin(), out.end());
    out.push_back(a);  // close the cycle
    return out;
  }
  Vertex cur = b;
  while (cur != a) {
    out.push_back(cur);
    cur = pred_[i][cur];
    assert(cur != kNoVertex);
  }
  out.push_back(a);
  std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// S-bottleneck length

double s_bottleneck_length(const WeightedDigraph& g, std::span<const Vertex> cycle,
                           const std::set<Vertex>& s_set) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) {
    throw std::invalid_argument("cycle must be closed: v1 ... vk v1");
  }
  const std::size_t k = cycle.size() - 1;  // edge count
  std::vector<double> arrive(k + 1, 0.0);  // arrive[i]: travel up to cycle[i]
  for (std::size_t i = 0; i < k; ++i) {
    auto w = g.edge_weight(cycle[i], cycle[i + 1]);
    if (!w) {
      throw std::invalid_argument("cycle uses missing edge " + g.id(cycle[i]) +
                                  " -> " + g.id(cycle[i + 1]));
    }
    arrive[i + 1] = arrive[i] + *w;
  }
  std::vector<std::size_t> hits;  // positions 0..k-1 visiting S
  for (std::size_t i = 0; i < k; ++i) {
    if (s_set.count(cycle[i])) hits.push_back(i);
  }
  if (hits.empty()) return kInfinity;
  double best = 0.0;
  for (std::size_t h = 0; h + 1 < hits.size(); ++h) {
    best = std::max(best, arrive[hits[h + 1]] - arrive[hits[h]]);
  }
  // Wrap-around gap from the last visit through the closing edge.
  best = std::max(best, arrive[k] - arrive[hits.back()] + arrive[hits.front()]);
  return best;
}

// ---------------------------------------------------------------------------
// Min-Bottleneck-Cycle

namespace {

// Deterministic processing order: vertex ids, lexicographically.
std::vector<Vertex> sorted_by_id(const WeightedDigraph& g, const std::set<Vertex>& vs) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end(),
            [&](Vertex a, Vertex b) { return g.id(a) < g.id(b); });
  return out;
}

// Appends p to cyc, assuming p starts where cyc currently ends.
void append_path(std::vector<Vertex>& cyc, const std::vector<Vertex>& p) {
  assert(!p.empty() && p.front() == cyc.back());
  cyc.insert(cyc.end(), p.begin() + 1, p.end());
}

}  // namespace

std::optional<CycleResult> min_bottleneck_cycle(const WeightedDigraph& g,
                                                const std::set<Vertex>& s_set,
                                                const std::set<Vertex>& f_set) {
  if (s_set.empty() || f_set.empty()) return std::nullopt;
  const std::vector<Vertex> s_list = sorted_by_id(g, s_set);
  const std::vector<Vertex> f_list = sorted_by_id(g, f_set);
  const std::size_t ns = s_list.size();
  const std::size_t nf = f_list.size();

  // Step 1: pairwise shortest paths within S.
  const PathTable d_ss = shortest_path(g, s_list, s_list);

  // Step 2: the S-graph, with an edge wherever step 1 found a path. The
  // diagonal contributes self-loops weighted by the best cycle through the
  // vertex.
  WeightedDigraph gs;
  std::vector<Vertex> s_in_gs(ns);
  for (std::size_t i = 0; i < ns; ++i) s_in_gs[i] = gs.intern(g.id(s_list[i]));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      const double d = d_ss.dist(i, j);
      if (d != kInfinity) gs.add_edge(s_in_gs[i], s_in_gs[j], d);
    }
  }

  // Step 3: bottleneck distances over the S-graph.
  const PathTable d_bot = shortest_bot_path(gs, s_in_gs, s_in_gs);

  // Step 4: distances between F and S, with the diagonal zeroed where the
  // same vertex plays both roles.
  const PathTable d_fs = shortest_path(g, f_list, s_list);
  const PathTable d_sf = shortest_path(g, s_list, f_list);
  auto fs = [&](std::size_t fi, std::size_t si) {
    return f_list[fi] == s_list[si] ? 0.0 : d_fs.dist(fi, si);
  };
  auto sf = [&](std::size_t si, std::size_t fi) {
    return s_list[si] == f_list[fi] ? 0.0 : d_sf.dist(si, fi);
  };

  // Step 5: minimize the triple cost.
  double best = kInfinity;
  std::size_t bf = 0, bs1 = 0, bs2 = 0;
  bool found = false;
  for (std::size_t fi = 0; fi < nf; ++fi) {
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < ns; ++j) {
        const double around = fs(fi, i) + sf(j, fi);
        double c;
        if (f_list[fi] != s_list[i] && i == j) {
          c = around;
        } else {
          c = std::max(around, d_bot.dist(i, j));
        }
        if (c < best) {
          best = c;
          bf = fi;
          bs1 = i;
          bs2 = j;
          found = true;
        }
      }
    }
  }

  // Step 6: stitch the witness cycle.
  if (!found || best == kInfinity) return std::nullopt;
  const Vertex f = f_list[bf];
  const Vertex s1 = s_list[bs1];
  const Vertex s2 = s_list[bs2];
  std::vector<Vertex> cyc{f};
  if (f != s1) append_path(cyc, d_fs.path(bf, bs1));
  if (bs1 != bs2) {
    // Expand the bottleneck path edge by edge through the step-1 tables.
    const std::vector<Vertex> gs_path = d_bot.path(bs1, bs2);
    for (std::size_t e = 0; e + 1 < gs_path.size(); ++e) {
      append_path(cyc, d_ss.path(gs_path[e], gs_path[e + 1]));
    }
  } else if (f == s1) {
    // f == s1 == s2: the suffix body is the best S-cycle through s1.
    const std::vector<Vertex> gs_cycle = d_bot.path(bs1, bs2);
    for (std::size_t e = 0; e + 1 < gs_cycle.size(); ++e) {
      append_path(cyc, d_ss.path(gs_cycle[e], gs_cycle[e + 1]));
    }
  }
  if (s2 != f) append_path(cyc, d_sf.path(bs2, bf));

  CycleResult result;
  result.length = s_bottleneck_length(g, cyc, s_set);
  assert(std::abs(result.length - best) <= 1e-9 * std::max(1.0, std::abs(best)));
  result.cycle = std::move(cyc);
  result.f = f;
  result.s1 = s1;
  result.s2 = s2;
  return result;
}

}  // namespace optrun
