#ifndef KCHEEGER_SPECTRUM_HPP
#define KCHEEGER_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kcheeger/dense_matrix.hpp"
#include "kcheeger/edge_list_io.hpp"
#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"
#include "kcheeger/jacobi.hpp"
#include "kcheeger/laplacian.hpp"

namespace kcheeger {

/// Flips v so its largest-magnitude entry is positive; among entries within
/// 1e-12 of the maximum magnitude the lowest index decides.
inline void canonicalize_sign(std::vector<double>& v) {
  const double m = norm_inf(v);
  if (m == 0.0) return;
  const double slack = 1e-12 * std::max(1.0, m);
  for (double& x : v) {
    if (std::abs(x) >= m - slack) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

/// Ascending eigenpairs of a normalized Laplacian.
///
/// A spectrum from `eigendecompose` is complete (n pairs). An injected basis may
/// carry only the lowest k pairs; consumers that need more throw ParameterError.
class Spectrum {
public:
  Spectrum() = default;

  Spectrum(std::vector<double> eigenvalues, std::vector<std::vector<double>> eigenvectors,
           std::vector<double> inv_sqrt_degree, bool complete, std::size_t sweeps = 0)
      : eigenvalues_(std::move(eigenvalues)),
        eigenvectors_(std::move(eigenvectors)),
        inv_sqrt_degree_(std::move(inv_sqrt_degree)),
        complete_(complete),
        sweeps_(sweeps) {}

  std::size_t dimension() const noexcept { return inv_sqrt_degree_.size(); }
  std::size_t num_pairs() const noexcept { return eigenvalues_.size(); }
  bool complete() const noexcept { return complete_; }
  std::size_t sweeps() const noexcept { return sweeps_; }

  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t i) const { return eigenvalues_.at(i); }
  std::span<const double> eigenvector(std::size_t i) const { return eigenvectors_.at(i); }

  /// x_i = D^{-1/2} v_i (zero on isolated vertices).
  std::vector<double> harmonic(std::size_t i) const {
    const auto& v = eigenvectors_.at(i);
    std::vector<double> x(v.size());
    for (std::size_t u = 0; u < v.size(); ++u) x[u] = inv_sqrt_degree_[u] * v[u];
    return x;
  }

private:
  std::vector<double> eigenvalues_;
  std::vector<std::vector<double>> eigenvectors_;
  std::vector<double> inv_sqrt_degree_;
  bool complete_ = false;
  std::size_t sweeps_ = 0;
};

inline Spectrum eigendecompose(const NormalizedLaplacian& lap, const JacobiOptions& opts = {}) {
  if (lap.size() == 0) throw ParameterError("n", "eigendecomposition needs at least one vertex");
  auto jr = jacobi_eigensolve(lap.entries, opts);
  const std::size_t n = lap.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return jr.eigenvalues[a] < jr.eigenvalues[b]; });
  std::vector<double> values(n);
  std::vector<std::vector<double>> vectors(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = jr.eigenvalues[order[i]];
    vectors[i] = std::move(jr.eigenvectors[order[i]]);
    canonicalize_sign(vectors[i]);
  }
  return Spectrum(std::move(values), std::move(vectors), lap.inv_sqrt_degree, true, jr.sweeps);
}

inline Spectrum eigendecompose(const Graph& g, const JacobiOptions& opts = {}) {
  return eigendecompose(build_laplacian(g), opts);
}

/// max_i ||L v_i - lambda_i v_i||_2
inline double max_residual(const NormalizedLaplacian& lap, const Spectrum& spec) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.num_pairs(); ++i) {
    auto v = spec.eigenvector(i);
    auto lv = lap.entries.multiply(v);
    for (std::size_t u = 0; u < lv.size(); ++u) lv[u] -= spec.eigenvalue(i) * v[u];
    worst = std::max(worst, norm2(lv));
  }
  return worst;
}

/// max_{i,j} |v_i . v_j - delta_ij|
inline double orthonormality_error(const Spectrum& spec) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.num_pairs(); ++i)
    for (std::size_t j = i; j < spec.num_pairs(); ++j)
      worst = std::max(worst, std::abs(dot(spec.eigenvector(i), spec.eigenvector(j)) - (i == j ? 1.0 : 0.0)));
  return worst;
}

/// Builds a partial spectrum from user-supplied orthonormal eigenvectors of L.
/// Eigenvalues are the Rayleigh quotients; each vector must satisfy
/// ||L v - (v^T L v) v|| <= tol, and the set must be orthonormal within tol.
inline Spectrum spectrum_from_basis(const NormalizedLaplacian& lap, std::vector<std::vector<double>> basis,
                                    double tol = 1e-6) {
  const std::size_t n = lap.size();
  std::vector<double> values;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != n)
      throw ValidationError("basis vector " + std::to_string(i) + " has length " +
                            std::to_string(basis[i].size()) + ", expected " + std::to_string(n));
    auto lv = lap.entries.multiply(basis[i]);
    double lambda = dot(basis[i], lv);
    for (std::size_t u = 0; u < n; ++u) lv[u] -= lambda * basis[i][u];
    double res = norm2(lv);
    if (res > tol)
      throw ValidationError("basis vector " + std::to_string(i) + " is not an eigenvector (residual " +
                            std::to_string(res) + ")");
    if (i > 0 && lambda < values.back() - tol)
      throw ValidationError("basis eigenvalues are not ascending at vector " + std::to_string(i));
    values.push_back(lambda);
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      double err = std::abs(dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0));
      if (err > tol)
        throw ValidationError("basis vectors " + std::to_string(i) + "," + std::to_string(j) +
                              " are not orthonormal (error " + std::to_string(err) + ")");
    }
  }
  return Spectrum(std::move(values), std::move(basis), lap.inv_sqrt_degree, false);
}

/// Harmonic eigenvectors x_0 .. x_{k-1}.
inline std::vector<std::vector<double>> harmonic_basis(const Spectrum& spec, const Graph& g, std::size_t k) {
  if (k > g.num_vertices())
    throw ParameterError("k", "k = " + std::to_string(k) + " exceeds n = " + std::to_string(g.num_vertices()));
  if (k > spec.num_pairs())
    throw ParameterError("k", "spectrum carries only " + std::to_string(spec.num_pairs()) + " eigenpairs");
  std::vector<std::vector<double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(spec.harmonic(i));
  return out;
}

inline std::size_t num_zero_eigenvalues(const Spectrum& spec, double tol = 1e-8) {
  return static_cast<std::size_t>(
      std::count_if(spec.eigenvalues().begin(), spec.eigenvalues().end(), [&](double l) { return l < tol; }));
}

// Basis file: "n <n> k <k>" followed by k lines of n reals (eigenvectors of L).

inline std::vector<std::vector<double>> read_basis(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<std::vector<double>> rows;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!header) {
      if (tokens.size() != 4 || tokens[0] != "n" || tokens[2] != "k")
        throw ParseError(line_no, "expected header 'n <n> k <k>'");
      header = {detail::parse_index(tokens[1], line_no), detail::parse_index(tokens[3], line_no)};
      continue;
    }
    if (tokens.size() != header->first)
      throw ParseError(line_no, "expected " + std::to_string(header->first) + " values");
    std::vector<double> row;
    row.reserve(tokens.size());
    for (auto tok : tokens) {
      try {
        std::size_t used = 0;
        std::string s(tok);
        row.push_back(std::stod(s, &used));
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad real '" + std::string(tok) + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!header) throw ParseError(line_no, "missing header 'n <n> k <k>'");
  if (rows.size() != header->second)
    throw ParseError(line_no, "expected " + std::to_string(header->second) + " vectors, found " +
                                  std::to_string(rows.size()));
  return rows;
}

inline std::string write_basis(const std::vector<std::vector<double>>& basis) {
  std::ostringstream out;
  out << "n " << (basis.empty() ? 0 : basis.front().size()) << " k " << basis.size() << '\n';
  out << std::setprecision(17);
  for (const auto& row : basis) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << '\n';
  }
  return out.str();
}

} // namespace kcheeger

#endif // KCHEEGER_SPECTRUM_HPP
