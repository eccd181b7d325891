#ifndef KCHEEGER_CHEEGER_HPP
#define KCHEEGER_CHEEGER_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"
#include "kcheeger/laplacian.hpp"
#include "kcheeger/spectrum.hpp"

namespace kcheeger {

/// h(S) = e(S, S^c) / min(Vol S, Vol S^c).
inline double cheeger_ratio(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw DomainError("Cheeger ratio of the empty set");
  if (s.size() == g.num_vertices()) throw DomainError("Cheeger ratio of the full vertex set");
  auto vol_s = volume(g, s);
  auto vol_c = g.volume() - vol_s;
  auto denom = std::min(vol_s, vol_c);
  if (denom == 0) throw DomainError("Cheeger ratio with a zero-volume side");
  auto cut = edge_count_between(g, s, s.complement());
  return static_cast<double>(cut) / static_cast<double>(denom);
}

struct PairRatio {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t edges = 0;
  std::size_t min_volume = 0;
  double ratio = 0.0;
};

struct PartitionQuality {
  /// (1/k) * sum over unordered pairs {i, j} of e(S_i, S_j) / min(Vol S_i, Vol S_j)
  double h_avg = 0.0;
  /// max_i e(S_i, S_i^c) / min(Vol S_i, Vol S_i^c)
  double h_worst = 0.0;
  std::vector<PairRatio> pair_ratios;
  std::vector<double> part_ratios;
  std::vector<std::size_t> part_volumes;
};

/// Cross-edge counts between parts (unordered, i < j) and part volumes in one pass over the edges.
struct PartTallies {
  std::size_t k = 0;
  std::vector<std::size_t> volumes;
  std::vector<std::size_t> cross; // k*k, only i < j filled
  std::vector<std::size_t> internal_edges;

  std::size_t between(std::size_t i, std::size_t j) const { return i < j ? cross[i * k + j] : cross[j * k + i]; }
};

inline PartTallies tally_parts(const Graph& g, std::span<const std::uint32_t> labels, std::size_t k) {
  PartTallies t{k, std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k * k, 0), std::vector<std::size_t>(k, 0)};
  for (std::size_t v = 0; v < labels.size(); ++v) t.volumes[labels[v]] += g.degree(static_cast<Vertex>(v));
  for (const auto& e : g.edges()) {
    auto a = labels[e.u];
    auto b = labels[e.v];
    if (a == b) {
      ++t.internal_edges[a];
    } else {
      if (a > b) std::swap(a, b);
      ++t.cross[a * k + b];
    }
  }
  return t;
}

/// Ratio with the zero-volume convention: 0 edges over 0 volume is 0.
inline double guarded_ratio(std::size_t edges, std::size_t denom) {
  if (denom == 0) {
    if (edges != 0) throw DomainError("positive edge count over zero volume");
    return 0.0;
  }
  return static_cast<double>(edges) / static_cast<double>(denom);
}

inline PartitionQuality h_k_partition(const Graph& g, const Partition& p) {
  if (p.num_vertices() != g.num_vertices()) throw ParameterError("partition", "size does not match graph");
  const std::size_t k = p.num_parts();
  auto t = tally_parts(g, p.labels(), k);
  PartitionQuality q;
  q.part_volumes = t.volumes;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      PairRatio pr{i, j, t.between(i, j), std::min(t.volumes[i], t.volumes[j]), 0.0};
      pr.ratio = guarded_ratio(pr.edges, pr.min_volume);
      sum += pr.ratio;
      q.pair_ratios.push_back(pr);
    }
  }
  q.h_avg = sum / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t boundary = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) boundary += t.between(i, j);
    double r = guarded_ratio(boundary, std::min(t.volumes[i], g.volume() - t.volumes[i]));
    q.part_ratios.push_back(r);
    q.h_worst = std::max(q.h_worst, r);
  }
  return q;
}

/// Sum over parts of g_i^T L g_i with g_i = Vol(S_i)^{-1/2} D^{1/2} 1_{S_i}, evaluated on the dense L.
inline double partition_energy(const NormalizedLaplacian& lap, const Graph& g, const Partition& p) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.num_parts(); ++j) {
    auto s = p.part(j);
    auto vol = volume(g, s);
    if (vol == 0) throw DomainError("partition energy needs positive part volumes");
    auto x = scaled_indicator(lap, s);
    const double scale = 1.0 / std::sqrt(static_cast<double>(vol));
    for (double& xi : x) xi *= scale;
    total += lap.entries.bilinear(x, x);
  }
  return total;
}

/// Sum of the k smallest eigenvalues.
inline double eigenvalue_floor(const Spectrum& spec, std::size_t k) {
  if (k > spec.num_pairs()) throw ParameterError("k", "spectrum too short");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += spec.eigenvalue(i);
  return s;
}

inline constexpr double kHypothesisSlack = 1e-9;

struct CheegerBoundsReport {
  std::size_t k = 0;
  std::vector<double> eigenvalues;    // lambda_0 .. lambda_{k-1}
  std::vector<double> harmonic_norms; // ||x_i||_inf, i = 1 .. k-1
  /// (1/k) sum_{i=0}^{k-1} (1 - lambda_i); the reading under which the lower bound holds.
  double lambda_lower = 0.0;
  /// (1/k) sum_{i=1}^{k-1} (1 - lambda_i); the reading used by the upper bounds.
  double lambda_upper = 0.0;
  double alpha_max = 0.0;
  double alpha_sum = 0.0;
  /// 1/2 - lambda_lower/2
  double lower_bound = 0.0;
  /// 1/2 - lambda_upper/2; not a valid bound in general (K_4, k = 2 violates it).
  double lower_bound_statement_reading = 0.0;
  /// 1/2 - 1/(4k) - (k-1) lambda_upper / (4 Vol alpha^2), no asymptotic correction applied.
  std::optional<double> upper_bound_main;
  std::optional<double> upper_bound_nonpos;
  /// lambda_{k-1} <= 1 (+ slack): hypothesis of the per-eigenvector (main) bound.
  bool main_hypothesis_holds = false;
  bool multi_component = false;
  bool asymptotic_only = true;
};

inline double upper_bound_expression(std::size_t k, double lambda_upper, double volume, double alpha) {
  const double kd = static_cast<double>(k);
  return 0.5 - 1.0 / (4.0 * kd) - (kd - 1.0) * lambda_upper / (4.0 * volume * alpha * alpha);
}

inline CheegerBoundsReport bounds_report(const Spectrum& spec, const Graph& g, std::size_t k) {
  if (k < 2 || k > g.num_vertices())
    throw ParameterError("k", "need 2 <= k <= n, got k = " + std::to_string(k));
  if (k > spec.num_pairs())
    throw ParameterError("k", "spectrum carries only " + std::to_string(spec.num_pairs()) + " eigenpairs");
  CheegerBoundsReport r;
  r.k = k;
  const double kd = static_cast<double>(k);
  double sum_all = 0.0;
  double sum_nontrivial = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double l = spec.eigenvalue(i);
    r.eigenvalues.push_back(l);
    sum_all += 1.0 - l;
    if (i >= 1) {
      sum_nontrivial += 1.0 - l;
      const double norm = norm_inf(spec.harmonic(i));
      r.harmonic_norms.push_back(norm);
      r.alpha_max = std::max(r.alpha_max, norm);
      r.alpha_sum += norm;
    }
  }
  r.lambda_lower = sum_all / kd;
  r.lambda_upper = sum_nontrivial / kd;
  r.lower_bound = 0.5 - r.lambda_lower / 2.0;
  r.lower_bound_statement_reading = 0.5 - r.lambda_upper / 2.0;
  const double vol = static_cast<double>(g.volume());
  if (r.alpha_max > 0.0 && vol > 0.0) r.upper_bound_main = upper_bound_expression(k, r.lambda_upper, vol, r.alpha_max);
  if (r.alpha_sum > 0.0 && vol > 0.0) r.upper_bound_nonpos = upper_bound_expression(k, r.lambda_upper, vol, r.alpha_sum);
  r.main_hypothesis_holds = spec.eigenvalue(k - 1) <= 1.0 + kHypothesisSlack;
  r.multi_component = num_components(g) > 1;
  return r;
}

struct ClassicalCheegerCheck {
  double lambda1_half = 0.0;
  double h = 0.0;
  double sqrt_two_lambda1 = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass() const noexcept { return lower_ok && upper_ok; }
};

/// lambda_1 / 2 <= h <= sqrt(2 lambda_1), each side with 1e-9 slack.
inline ClassicalCheegerCheck classical_cheeger_check(const Spectrum& spec, double h, double slack = 1e-9) {
  if (spec.num_pairs() < 2) throw ParameterError("spectrum", "need lambda_1");
  const double l1 = std::max(spec.eigenvalue(1), 0.0);
  ClassicalCheegerCheck c{l1 / 2.0, h, std::sqrt(2.0 * l1), false, false};
  c.lower_ok = c.lambda1_half <= h + slack;
  c.upper_ok = h <= c.sqrt_two_lambda1 + slack;
  return c;
}

} // namespace kcheeger

#endif // KCHEEGER_CHEEGER_HPP
