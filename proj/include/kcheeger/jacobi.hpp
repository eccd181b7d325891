#ifndef KCHEEGER_JACOBI_HPP
#define KCHEEGER_JACOBI_HPP

#include <cmath>
#include <numeric>
#include <vector>

#include "kcheeger/dense_matrix.hpp"
#include "kcheeger/errors.hpp"

namespace kcheeger {

struct JacobiOptions {
  /// Converged once the off-diagonal Frobenius norm drops below tolerance_per_row * n.
  double tolerance_per_row = 1e-12;
  std::size_t max_sweeps = 100;
};

struct JacobiResult {
  std::vector<double> eigenvalues;              // unsorted, diagonal order
  std::vector<std::vector<double>> eigenvectors; // eigenvectors[i] pairs with eigenvalues[i]
  std::size_t sweeps = 0;
};

inline double off_diagonal_norm(const DenseMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

/// Cyclic Jacobi eigensolver for a dense symmetric matrix.
///
/// Sweeps visit pairs (p, q), p < q, in row order. Each rotation zeroes a(p, q);
/// eigenvectors accumulate as rows of V^T so updates touch contiguous memory.
/// Throws NumericalError after `max_sweeps` sweeps without convergence.
inline JacobiResult jacobi_eigensolve(DenseMatrix a, const JacobiOptions& opts = {}) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> vt(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) vt[i][i] = 1.0;

  const double target = opts.tolerance_per_row * static_cast<double>(n);
  std::size_t sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal_norm(a) < target) break;
    if (sweep == opts.max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge within " +
                           std::to_string(opts.max_sweeps) + " sweeps (off-diagonal norm " +
                           std::to_string(off_diagonal_norm(a)) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = c * arp - s * arq;
          const double nq = s * arp + c * arq;
          a(r, p) = np;
          a(p, r) = np;
          a(r, q) = nq;
          a(q, r) = nq;
        }
        auto& vp = vt[p];
        auto& vq = vt[q];
        for (std::size_t r = 0; r < n; ++r) {
          const double xp = vp[r];
          const double xq = vq[r];
          vp[r] = c * xp - s * xq;
          vq[r] = s * xp + c * xq;
        }
      }
    }
  }

  JacobiResult result;
  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  result.eigenvectors = std::move(vt);
  result.sweeps = sweep;
  return result;
}

} // namespace kcheeger

#endif // KCHEEGER_JACOBI_HPP
