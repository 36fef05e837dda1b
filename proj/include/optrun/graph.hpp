// Weighted digraph algorithms backing the cycle search: multi-source
// Dijkstra (sum and bottleneck objectives), S-bottleneck cycle length, and
// the minimum S-bottleneck cycle through an accepting set.

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace optrun {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class WeightedDigraph {
 public:
  struct Edge {
    Vertex dst;
    double weight;
  };

  // Adds or returns the vertex named `id`.
  Vertex intern(const std::string& id);
  std::optional<Vertex> find(const std::string& id) const;
  const std::string& id(Vertex v) const { return ids_[v]; }

  // Weights must be positive and finite. Parallel edges collapse to the
  // minimum weight.
  void add_edge(Vertex src, Vertex dst, double weight);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<Edge>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<Edge>& in_edges(Vertex v) const { return in_[v]; }  // dst = src vertex
  std::optional<double> edge_weight(Vertex src, Vertex dst) const;

  // Line format: `edge <src> <dst> <weight>` plus optional `vertex <id>`
  // lines and '#' comments.
  static WeightedDigraph parse(const std::string& text);

 private:
  std::vector<std::string> ids_;
  std::map<std::string, Vertex> index_;
  std::vector<std::vector<Edge>> out_, in_;
  std::size_t num_edges_ = 0;
};

// Distances and path reconstruction between a source set and a destination
// set. dist[i][j] is the optimal value from sources[i] to dests[j];
// +infinity marks unreachable pairs. The diagonal convention follows the
// cycle search: the value from v to itself is the best cycle through v.
class PathTable {
 public:
  const std::vector<Vertex>& sources() const { return sources_; }
  const std::vector<Vertex>& dests() const { return dests_; }
  double dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }

  // One optimal path, sources()[i] first and dests()[j] last. For the
  // diagonal this is the closed cycle through the vertex. Empty when
  // unreachable.
  std::vector<Vertex> path(std::size_t i, std::size_t j) const;

 private:
  friend PathTable single_source_tables(const WeightedDigraph&,
                                        std::span<const Vertex>,
                                        std::span<const Vertex>, bool);
  std::vector<Vertex> sources_, dests_;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<Vertex>> pred_;  // per source, over all vertices
  std::vector<Vertex> self_via_;           // closing in-neighbor of the best self-cycle
  const WeightedDigraph* graph_ = nullptr;
};

// Minimum total weight paths. dist(v, v) is the weight of the shortest
// cycle through v.
PathTable shortest_path(const WeightedDigraph& g, std::span<const Vertex> sources,
                        std::span<const Vertex> dests);

// Minimax variant: minimizes the maximum edge weight along the path, and on
// the diagonal the maximum edge weight of a cycle through v.
PathTable shortest_bot_path(const WeightedDigraph& g, std::span<const Vertex> sources,
                            std::span<const Vertex> dests);

// Maximum travel distance between successive visits to S around the cycle,
// wrap included; +infinity when the cycle avoids S. The cycle must be given
// closed (front() == back()) and edge-valid.
double s_bottleneck_length(const WeightedDigraph& g, std::span<const Vertex> cycle,
                           const std::set<Vertex>& s_set);

struct CycleResult {
  std::vector<Vertex> cycle;  // closed: front() == back()
  double length;              // S-bottleneck length
  Vertex f, s1, s2;           // witnessing triple
};

// Minimum S-bottleneck cycle containing at least one vertex of f_set.
// Returns nullopt when no such cycle with finite length exists. Ties are
// broken lexicographically on (cost, f id, s1 id, s2 id).
std::optional<CycleResult> min_bottleneck_cycle(const WeightedDigraph& g,
                                                const std::set<Vertex>& s_set,
                                                const std::set<Vertex>& f_set);

}  // namespace optrun
