// Bounds on h^(k) for complete graphs. The eigenvalue n/(n-1) is repeated, so the upper bound
// depends on which eigenbasis is used: the solver's, or the pair-difference basis e_a - e_b.

#include <cmath>
#include <cstdio>

#include "kcheeger/kcheeger.hpp"

using namespace kcheeger;

std::vector<std::vector<double>> pair_basis(std::size_t n, std::size_t k) {
  std::vector<std::vector<double>> basis{std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<double> v(n, 0.0);
    v[2 * i - 2] = 1.0 / std::sqrt(2.0);
    v[2 * i - 1] = -1.0 / std::sqrt(2.0);
    basis.push_back(std::move(v));
  }
  return basis;
}

int main() {
  std::printf("%5s %2s %10s %10s %14s %14s\n", "n", "k", "lower", "h^(k)", "upper(solver)", "upper(pairs)");
  for (std::size_t n : {8u, 16u, 64u, 256u}) {
    auto g = complete_graph(n);
    auto lap = build_laplacian(g);
    std::optional<Spectrum> solved;
    if (n <= 64) solved = eigendecompose(lap);
    for (std::size_t k = 2; k <= 4; ++k) {
      auto pairs = bounds_report(spectrum_from_basis(lap, pair_basis(n, k)), g, k);
      std::printf("%5zu %2zu %10.6f %10.6f ", n, k, pairs.lower_bound,
                  to_double(complete_graph_equipartition_value(n, k)));
      if (solved)
        std::printf("%14.6f ", *bounds_report(*solved, g, k).upper_bound_nonpos);
      else
        std::printf("%14s ", "-");
      std::printf("%14.6f\n", *pairs.upper_bound_nonpos);
    }
  }
}
