#ifndef KCHEEGER_GRAPH_HPP
#define KCHEEGER_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kcheeger/errors.hpp"

namespace kcheeger {

using Vertex = std::uint32_t;

/// Undirected edge stored with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are normalized to `u < v` and kept sorted; adjacency lists are sorted.
/// Construction rejects self-loops, duplicate edges and out-of-range endpoints.
class Graph {
public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw ValidationError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              "} has an endpoint >= n = " + std::to_string(n));
      }
      if (e.u == e.v) {
        throw ValidationError("self-loop at vertex " + std::to_string(e.u));
      }
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
      throw ValidationError("duplicate edge {" + std::to_string(dup->u) + "," +
                            std::to_string(dup->v) + "}");
    }
    edges_ = std::move(edges);

    adjacency_.assign(n_, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    degrees_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      std::sort(adjacency_[v].begin(), adjacency_[v].end());
      degrees_[v] = adjacency_[v].size();
      max_degree_ = std::max(max_degree_, degrees_[v]);
    }
    volume_ = 2 * edges_.size();
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return degrees_.at(v); }
  std::span<const std::size_t> degrees() const noexcept { return degrees_; }
  std::size_t volume() const noexcept { return volume_; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adjacency_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::size_t> degrees_;
  std::size_t volume_ = 0;
  std::size_t max_degree_ = 0;
};

/// Subset of a graph's vertex set with O(1) membership.
class VertexSet {
public:
  VertexSet() = default;

  explicit VertexSet(std::size_t n) : in_(n, 0) {}

  VertexSet(std::size_t n, std::span<const Vertex> members) : in_(n, 0) {
    for (auto v : members) insert(v);
  }

  VertexSet(std::size_t n, std::initializer_list<Vertex> members)
      : VertexSet(n, std::span<const Vertex>(members.begin(), members.size())) {}

  static VertexSet all(std::size_t n) {
    VertexSet s(n);
    std::fill(s.in_.begin(), s.in_.end(), 1);
    s.size_ = n;
    return s;
  }

  void insert(Vertex v) {
    if (v >= in_.size()) {
      throw ValidationError("vertex " + std::to_string(v) + " outside set universe of size " +
                            std::to_string(in_.size()));
    }
    if (!in_[v]) {
      in_[v] = 1;
      ++size_;
    }
  }

  bool contains(Vertex v) const noexcept { return v < in_.size() && in_[v]; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t universe() const noexcept { return in_.size(); }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for (std::size_t v = 0; v < in_.size(); ++v)
      if (in_[v]) out.push_back(static_cast<Vertex>(v));
    return out;
  }

  VertexSet complement() const {
    VertexSet c(in_.size());
    for (std::size_t v = 0; v < in_.size(); ++v)
      if (!in_[v]) c.insert(static_cast<Vertex>(v));
    return c;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.in_ == b.in_; }

private:
  std::vector<std::uint8_t> in_;
  std::size_t size_ = 0;
};

/// Assignment of every vertex to one of `k` labeled parts.
///
/// The default constructor form requires every part to be nonempty; rounding
/// output goes through `possibly_empty`.
class Partition {
public:
  Partition() = default;

  Partition(std::size_t k, std::vector<std::uint32_t> labels) : Partition(k, std::move(labels), true) {}

  static Partition possibly_empty(std::size_t k, std::vector<std::uint32_t> labels) {
    return Partition(k, std::move(labels), false);
  }

  /// Builds a partition from explicit parts; each vertex 0..n-1 must appear exactly once.
  static Partition from_parts(std::size_t n, const std::vector<std::vector<Vertex>>& parts) {
    std::vector<std::uint32_t> labels(n, UINT32_MAX);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      for (auto v : parts[j]) {
        if (v >= n) throw ValidationError("vertex " + std::to_string(v) + " >= n");
        if (labels[v] != UINT32_MAX) throw ValidationError("vertex " + std::to_string(v) + " in two parts");
        labels[v] = static_cast<std::uint32_t>(j);
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (labels[v] == UINT32_MAX) throw ValidationError("vertex " + std::to_string(v) + " unassigned");
    return Partition(parts.size(), std::move(labels));
  }

  std::size_t num_parts() const noexcept { return k_; }
  std::size_t num_vertices() const noexcept { return labels_.size(); }
  std::uint32_t label(Vertex v) const { return labels_.at(v); }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }

  std::vector<std::size_t> part_sizes() const {
    std::vector<std::size_t> sizes(k_, 0);
    for (auto l : labels_) ++sizes[l];
    return sizes;
  }

  bool has_empty_part() const {
    auto sizes = part_sizes();
    return std::find(sizes.begin(), sizes.end(), 0u) != sizes.end();
  }

  VertexSet part(std::size_t j) const {
    VertexSet s(labels_.size());
    for (std::size_t v = 0; v < labels_.size(); ++v)
      if (labels_[v] == j) s.insert(static_cast<Vertex>(v));
    return s;
  }

  std::vector<std::vector<Vertex>> parts() const {
    std::vector<std::vector<Vertex>> out(k_);
    for (std::size_t v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(static_cast<Vertex>(v));
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  Partition(std::size_t k, std::vector<std::uint32_t> labels, bool require_nonempty)
      : k_(k), labels_(std::move(labels)) {
    if (k_ < 1) throw ParameterError("k", "partition needs at least one part");
    for (auto l : labels_)
      if (l >= k_) throw ValidationError("label " + std::to_string(l) + " >= k = " + std::to_string(k_));
    if (require_nonempty && has_empty_part())
      throw ValidationError("partition has an empty part");
  }

  std::size_t k_ = 0;
  std::vector<std::uint32_t> labels_;
};

inline std::size_t volume(const Graph& g, const VertexSet& s) {
  std::size_t vol = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (s.contains(static_cast<Vertex>(v))) vol += g.degree(static_cast<Vertex>(v));
  return vol;
}

/// Ordered incidence count: sum of A[u][v] over u in s, v in t.
/// An edge inside s ∩ t is counted twice; for disjoint sets this is the plain crossing count.
inline std::size_t edge_count_between(const Graph& g, const VertexSet& s, const VertexSet& t) {
  std::size_t count = 0;
  for (const auto& e : g.edges()) {
    if (s.contains(e.u) && t.contains(e.v)) ++count;
    if (s.contains(e.v) && t.contains(e.u)) ++count;
  }
  return count;
}

/// Component id per vertex, ids assigned in order of the smallest vertex.
inline std::vector<std::uint32_t> component_labels(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> comp(n, UINT32_MAX);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != UINT32_MAX) continue;
    comp[s] = next;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(u)) {
        if (comp[w] == UINT32_MAX) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

inline std::size_t num_components(const Graph& g) {
  auto comp = component_labels(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

inline bool is_connected(const Graph& g) { return num_components(g) <= 1; }

} // namespace kcheeger

#endif // KCHEEGER_GRAPH_HPP
