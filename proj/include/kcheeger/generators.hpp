#ifndef KCHEEGER_GENERATORS_HPP
#define KCHEEGER_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"
#include "kcheeger/random.hpp"

namespace kcheeger {

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ParameterError("n", "a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return Graph(n, std::move(edges));
}

/// rows x cols lattice; vertex (r, c) has index r * cols + c.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, static_cast<Vertex>(v + cols)});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

/// Components are laid out consecutively in the order given.
inline Graph disjoint_union(std::span<const Graph> parts) {
  std::size_t offset = 0;
  std::vector<Edge> edges;
  for (const auto& g : parts) {
    for (const auto& e : g.edges())
      edges.push_back({static_cast<Vertex>(e.u + offset), static_cast<Vertex>(e.v + offset)});
    offset += g.num_vertices();
  }
  return Graph(offset, std::move(edges));
}

namespace detail {

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(name, "must lie in [0, 1], got " + std::to_string(p));
}

} // namespace detail

/// Erdos-Renyi G(n, p). Pair (u, v), u < v, in lexicographic order consumes one draw.
inline Graph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  detail::check_probability(p, "p");
  CounterRng rng(seed, 0);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

/// Block of vertex v in the planted partition: contiguous blocks, sizes differ by at most one.
inline std::uint32_t planted_block(std::size_t v, std::size_t n, std::size_t k) {
  return static_cast<std::uint32_t>(v * k / n);
}

inline Partition planted_blocks(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = planted_block(v, n, k);
  return Partition(k, std::move(labels));
}

/// Stochastic block model with k contiguous blocks; p_in within blocks, p_out across.
inline Graph planted_partition_graph(std::size_t n, std::size_t k, double p_in, double p_out,
                                     std::uint64_t seed) {
  if (k < 1) throw ParameterError("k", "need at least one block");
  if (k > n) throw ParameterError("k", "more blocks than vertices");
  detail::check_probability(p_in, "p_in");
  detail::check_probability(p_out, "p_out");
  if (!(p_in > p_out)) throw ParameterError("p_in", "must exceed p_out");
  CounterRng rng(seed, 0);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      double p = planted_block(u, n, k) == planted_block(v, n, k) ? p_in : p_out;
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

enum class GraphKind { complete, path, cycle, disjoint_union, grid, planted_partition, gnp };

inline GraphKind parse_graph_kind(std::string_view name) {
  if (name == "complete") return GraphKind::complete;
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "union" || name == "disjoint_union") return GraphKind::disjoint_union;
  if (name == "grid") return GraphKind::grid;
  if (name == "planted" || name == "planted_partition") return GraphKind::planted_partition;
  if (name == "gnp") return GraphKind::gnp;
  throw ParameterError("kind", "unknown graph kind '" + std::string(name) + "'");
}

inline std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::complete: return "complete";
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::disjoint_union: return "union";
    case GraphKind::grid: return "grid";
    case GraphKind::planted_partition: return "planted";
    case GraphKind::gnp: return "gnp";
  }
  return "?";
}

struct GeneratorParams {
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<double> p;
  std::optional<double> p_in;
  std::optional<double> p_out;
  std::optional<std::size_t> rows;
  std::optional<std::size_t> cols;
  /// disjoint_union only: component descriptors such as "complete:3" or "cycle:5".
  std::vector<std::string> components;
};

namespace detail {

template <typename T>
T require(const std::optional<T>& value, const char* name) {
  if (!value) throw ParameterError(name, "required for this graph kind");
  return *value;
}

} // namespace detail

/// Deterministic for fixed (kind, params, seed); only gnp and planted_partition read the seed.
inline Graph generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed = 0) {
  using detail::require;
  switch (kind) {
    case GraphKind::complete: return complete_graph(require(params.n, "n"));
    case GraphKind::path: return path_graph(require(params.n, "n"));
    case GraphKind::cycle: return cycle_graph(require(params.n, "n"));
    case GraphKind::grid: return grid_graph(require(params.rows, "rows"), require(params.cols, "cols"));
    case GraphKind::gnp: return gnp_graph(require(params.n, "n"), require(params.p, "p"), seed);
    case GraphKind::planted_partition:
      return planted_partition_graph(require(params.n, "n"), require(params.k, "k"),
                                     require(params.p_in, "p_in"), require(params.p_out, "p_out"), seed);
    case GraphKind::disjoint_union: {
      if (params.components.empty()) throw ParameterError("components", "required for union");
      std::vector<Graph> parts;
      for (std::size_t i = 0; i < params.components.size(); ++i) {
        const auto& desc = params.components[i];
        auto colon = desc.find(':');
        if (colon == std::string::npos)
          throw ParameterError("components", "expected kind:n, got '" + desc + "'");
        auto sub = parse_graph_kind(desc.substr(0, colon));
        if (sub == GraphKind::disjoint_union || sub == GraphKind::grid || sub == GraphKind::planted_partition)
          throw ParameterError("components", "unsupported component kind in '" + desc + "'");
        std::size_t size = 0;
        try {
          size = std::stoul(desc.substr(colon + 1));
        } catch (const std::exception&) {
          throw ParameterError("components", "bad size in '" + desc + "'");
        }
        GeneratorParams sp;
        sp.n = size;
        sp.p = params.p;
        parts.push_back(generate(sub, sp, seed + i));
      }
      return disjoint_union(parts);
    }
  }
  throw ParameterError("kind", "unhandled graph kind");
}

} // namespace kcheeger

#endif // KCHEEGER_GENERATORS_HPP
