#ifndef KCHEEGER_LAPLACIAN_HPP
#define KCHEEGER_LAPLACIAN_HPP

#include <cmath>
#include <vector>

#include "kcheeger/dense_matrix.hpp"
#include "kcheeger/graph.hpp"

namespace kcheeger {

/// Dense normalized Laplacian D^{-1/2}(D - A)D^{-1/2}, i.e. I - D^{-1/2} A D^{-1/2}
/// on non-isolated vertices. Isolated vertices get D^{-1/2} = 0, hence a zero row and column.
struct NormalizedLaplacian {
  DenseMatrix entries;
  std::vector<double> degrees;
  std::vector<double> sqrt_degree;
  std::vector<double> inv_sqrt_degree;

  std::size_t size() const noexcept { return entries.size(); }
};

inline NormalizedLaplacian build_laplacian(const Graph& g) {
  const std::size_t n = g.num_vertices();
  NormalizedLaplacian lap{DenseMatrix(n), std::vector<double>(n), std::vector<double>(n),
                          std::vector<double>(n)};
  for (std::size_t v = 0; v < n; ++v) {
    double d = static_cast<double>(g.degree(static_cast<Vertex>(v)));
    lap.degrees[v] = d;
    lap.sqrt_degree[v] = std::sqrt(d);
    lap.inv_sqrt_degree[v] = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    lap.entries(v, v) = d > 0 ? 1.0 : 0.0;
  }
  for (const auto& e : g.edges()) {
    double w = -lap.inv_sqrt_degree[e.u] * lap.inv_sqrt_degree[e.v];
    lap.entries(e.u, e.v) = w;
    lap.entries(e.v, e.u) = w;
  }
  return lap;
}

/// D^{1/2} 1_S
inline std::vector<double> scaled_indicator(const NormalizedLaplacian& lap, const VertexSet& s) {
  std::vector<double> x(lap.size(), 0.0);
  for (std::size_t v = 0; v < x.size(); ++v)
    if (s.contains(static_cast<Vertex>(v))) x[v] = lap.sqrt_degree[v];
  return x;
}

/// Evaluates (D^{1/2} 1_S)^T (I - L) (D^{1/2} 1_T) on the dense matrix.
inline double edge_count_quadform(const NormalizedLaplacian& lap, const VertexSet& s, const VertexSet& t) {
  auto x = scaled_indicator(lap, s);
  auto y = scaled_indicator(lap, t);
  return dot(x, y) - lap.entries.bilinear(x, y);
}

} // namespace kcheeger

#endif // KCHEEGER_LAPLACIAN_HPP
