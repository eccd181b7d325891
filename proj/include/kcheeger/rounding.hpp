#ifndef KCHEEGER_ROUNDING_HPP
#define KCHEEGER_ROUNDING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcheeger/cheeger.hpp"
#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"
#include "kcheeger/parallel.hpp"
#include "kcheeger/random.hpp"
#include "kcheeger/spectrum.hpp"

namespace kcheeger {

// Randomized spectral rounding. Part labels 0 .. k-2 are driven by the nontrivial
// harmonic eigenvectors x_1 .. x_{k-1} (label j <-> x_{j+1}); label k-1 is the
// residual part that takes whatever probability mass is left.

/// main: each x_j is normalized by its own infinity norm.
/// nonpos: every x_j is normalized by alpha = sum_i ||x_i||_inf.
enum class Variant { main, nonpos };

inline std::string_view to_string(Variant v) { return v == Variant::main ? "main" : "nonpos"; }

inline Variant parse_variant(std::string_view s) {
  if (s == "main") return Variant::main;
  if (s == "nonpos") return Variant::nonpos;
  throw ParameterError("variant", "expected 'main' or 'nonpos', got '" + std::string(s) + "'");
}

struct RoundingConfig {
  std::size_t k = 2;
  double delta = 0.1;
  Variant variant = Variant::main;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 2) throw ParameterError("k", "need k >= 2");
    if (!(delta >= 0.0 && delta < 0.5)) throw ParameterError("delta", "must lie in [0, 1/2)");
    if (trials < 1) throw ParameterError("trials", "need at least one trial");
  }
};

/// n^{-1/3}, capped at 1/4 so tiny graphs still get a valid delta.
inline double default_delta(std::size_t n) {
  if (n == 0) return 0.25;
  return std::min(std::pow(static_cast<double>(n), -1.0 / 3.0), 0.25);
}

inline Variant default_variant(const Spectrum& spec, std::size_t k) {
  return spec.eigenvalue(k - 1) <= 1.0 + kHypothesisSlack ? Variant::main : Variant::nonpos;
}

inline RoundingConfig default_rounding_config(const Spectrum& spec, const Graph& g, std::size_t k) {
  RoundingConfig cfg;
  cfg.k = k;
  cfg.delta = default_delta(g.num_vertices());
  cfg.variant = default_variant(spec, k);
  return cfg;
}

/// Parameters a spectral table was built from; absent for hand-built tables.
struct RoundingOrigin {
  double delta = 0.0;
  Variant variant = Variant::main;
  std::vector<double> denominators; // D_j per label j < k-1
  std::vector<double> eigenvalues;  // lambda_{j+1} per label j < k-1
};

class ProbabilityTable {
public:
  ProbabilityTable() = default;

  /// Validates that every row is a probability vector (entries in [0,1], sum 1 within 1e-12).
  static ProbabilityTable from_rows(std::size_t k, const std::vector<std::vector<double>>& rows) {
    ProbabilityTable t;
    t.k_ = k;
    t.n_ = rows.size();
    t.probs_.reserve(t.n_ * k);
    for (std::size_t v = 0; v < rows.size(); ++v) {
      if (rows[v].size() != k) throw ValidationError("row " + std::to_string(v) + " has wrong length");
      double sum = 0.0;
      for (double p : rows[v]) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability outside [0,1] in row " + std::to_string(v));
        sum += p;
        t.probs_.push_back(p);
      }
      if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("row " + std::to_string(v) + " does not sum to 1");
    }
    return t;
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_parts() const noexcept { return k_; }
  std::size_t clamped_count() const noexcept { return clamped_; }
  double p(std::size_t v, std::size_t j) const { return probs_[v * k_ + j]; }
  std::span<const double> row(std::size_t v) const { return {probs_.data() + v * k_, k_}; }
  const std::optional<RoundingOrigin>& origin() const noexcept { return origin_; }

private:
  friend ProbabilityTable probability_table(const Spectrum&, const Graph&, const RoundingConfig&);

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> probs_;
  std::size_t clamped_ = 0;
  std::optional<RoundingOrigin> origin_;
};

/// Per-vertex assignment probabilities
///   p_v(j) = (1 - 2 delta) / (2(k-1)) + x_{j+1}(v) / (2(k-1) D_j),  j < k-1,
///   p_v(k-1) = 1 - sum_{j<k-1} p_v(j).
/// Negative entries are clamped to 0 and the mass goes to the residual part.
inline ProbabilityTable probability_table(const Spectrum& spec, const Graph& g, const RoundingConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.k;
  const std::size_t n = g.num_vertices();
  if (k > n) throw ParameterError("k", "k exceeds n");
  auto xs = harmonic_basis(spec, g, k);

  RoundingOrigin origin{cfg.delta, cfg.variant, {}, {}};
  double alpha = 0.0;
  std::vector<double> norms;
  for (std::size_t i = 1; i < k; ++i) {
    double m = norm_inf(xs[i]);
    if (m == 0.0) throw NumericalError("degenerate harmonic eigenvector x_" + std::to_string(i) + " (zero infinity norm)");
    norms.push_back(m);
    alpha += m;
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    origin.denominators.push_back(cfg.variant == Variant::main ? norms[j] : alpha);
    origin.eigenvalues.push_back(spec.eigenvalue(j + 1));
  }

  ProbabilityTable t;
  t.n_ = n;
  t.k_ = k;
  t.probs_.assign(n * k, 0.0);
  const double km1 = static_cast<double>(k - 1);
  const double base = (1.0 - 2.0 * cfg.delta) / (2.0 * km1);
  for (std::size_t v = 0; v < n; ++v) {
    double used = 0.0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
      double p = base + xs[j + 1][v] / (2.0 * km1 * origin.denominators[j]);
      if (p < 0.0) {
        p = 0.0;
        ++t.clamped_;
      }
      t.probs_[v * k + j] = p;
      used += p;
    }
    t.probs_[v * k + (k - 1)] = std::max(0.0, 1.0 - used);
  }
  t.origin_ = std::move(origin);
  return t;
}

/// Draws one label per vertex from stream (seed, stream); vertex v consumes the v-th draw.
inline Partition sample_partition(const ProbabilityTable& table, std::uint64_t seed, std::uint64_t stream = 0) {
  CounterRng rng(seed, stream);
  const std::size_t k = table.num_parts();
  std::vector<std::uint32_t> labels(table.num_vertices());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const double u = rng.uniform();
    auto r = table.row(v);
    double cum = 0.0;
    std::size_t chosen = k - 1;
    for (std::size_t j = 0; j < k; ++j) {
      cum += r[j];
      if (u < cum) {
        chosen = j;
        break;
      }
    }
    // Rounding can leave cum slightly below 1; fall back to the last part with mass.
    if (chosen == k - 1 && r[k - 1] == 0.0) {
      for (std::size_t j = k; j-- > 0;) {
        if (r[j] > 0.0) {
          chosen = j;
          break;
        }
      }
    }
    labels[v] = static_cast<std::uint32_t>(chosen);
  }
  return Partition::possibly_empty(k, std::move(labels));
}

/// E[Vol(S_j)] = sum_v p_v(j) d_v
inline std::vector<double> expected_volumes(const ProbabilityTable& table, const Graph& g) {
  std::vector<double> out(table.num_parts(), 0.0);
  for (std::size_t v = 0; v < table.num_vertices(); ++v)
    for (std::size_t j = 0; j < table.num_parts(); ++j)
      out[j] += table.p(v, j) * static_cast<double>(g.degree(static_cast<Vertex>(v)));
  return out;
}

/// E[e(S_j, S_j)] = m_j^T A m_j with m_j(v) = p_v(j); exact because A has a zero diagonal
/// and vertices are assigned independently.
inline std::vector<double> expected_internal_edges(const ProbabilityTable& table, const Graph& g) {
  std::vector<double> out(table.num_parts(), 0.0);
  for (const auto& e : g.edges())
    for (std::size_t j = 0; j < table.num_parts(); ++j) out[j] += 2.0 * table.p(e.u, j) * table.p(e.v, j);
  return out;
}

/// mu = (1 - 2 delta) Vol(G) / (2(k-1))
inline double common_expected_volume(double delta, std::size_t k, const Graph& g) {
  return (1.0 - 2.0 * delta) * static_cast<double>(g.volume()) / (2.0 * static_cast<double>(k - 1));
}

namespace detail {

inline const RoundingOrigin& require_origin(const ProbabilityTable& t) {
  if (!t.origin()) throw ParameterError("table", "closed forms need a table built from a spectrum");
  return *t.origin();
}

} // namespace detail

/// Closed form for labels j < k-1 (valid when no entry was clamped):
///   ((1-2 delta)/(2(k-1)))^2 Vol(G) + (1 - lambda_{j+1}) / (4 (k-1)^2 D_j^2).
/// The (k-1)^2 follows from the mean vector c 1 + x_j / (2(k-1) D_j) and x_j^T A x_j = 1 - lambda_j.
inline std::vector<double> closed_form_expected_internal(const ProbabilityTable& table, const Graph& g) {
  const auto& o = detail::require_origin(table);
  const double km1 = static_cast<double>(table.num_parts() - 1);
  const double c = (1.0 - 2.0 * o.delta) / (2.0 * km1);
  std::vector<double> out;
  for (std::size_t j = 0; j < o.denominators.size(); ++j)
    out.push_back(c * c * static_cast<double>(g.volume()) +
                  (1.0 - o.eigenvalues[j]) / (4.0 * km1 * km1 * o.denominators[j] * o.denominators[j]));
  return out;
}

/// Same expression without the 1/(k-1)^2 factor on the eigenvalue term. Agrees with
/// closed_form_expected_internal only at k = 2; kept for side-by-side reporting.
inline std::vector<double> closed_form_expected_internal_unscaled(const ProbabilityTable& table, const Graph& g) {
  const auto& o = detail::require_origin(table);
  const double km1 = static_cast<double>(table.num_parts() - 1);
  const double c = (1.0 - 2.0 * o.delta) / (2.0 * km1);
  std::vector<double> out;
  for (std::size_t j = 0; j < o.denominators.size(); ++j)
    out.push_back(c * c * static_cast<double>(g.volume()) +
                  (1.0 - o.eigenvalues[j]) / (4.0 * o.denominators[j] * o.denominators[j]));
  return out;
}

struct SampleMoments {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

struct MonteCarloEstimate {
  std::uint64_t trials = 0;
  SampleMoments volume;
  SampleMoments internal; // ordered incidence count e(S_j, S_j)
};

namespace detail {

struct MomentSums {
  std::vector<std::uint64_t> vol, vol_sq, internal, internal_sq;
  explicit MomentSums(std::size_t k) : vol(k), vol_sq(k), internal(k), internal_sq(k) {}
};

inline SampleMoments finish_moments(const std::vector<std::uint64_t>& sum, const std::vector<std::uint64_t>& sum_sq,
                                    std::uint64_t trials) {
  SampleMoments m;
  const double t = static_cast<double>(trials);
  for (std::size_t j = 0; j < sum.size(); ++j) {
    const double mean = static_cast<double>(sum[j]) / t;
    double var = 0.0;
    if (trials > 1) var = std::max(0.0, (static_cast<double>(sum_sq[j]) - t * mean * mean) / (t - 1.0));
    m.mean.push_back(mean);
    m.standard_error.push_back(std::sqrt(var / t));
  }
  return m;
}

} // namespace detail

/// Sample means of Vol(S_j) and e(S_j, S_j); trial t uses stream (seed, t).
/// Sums are accumulated in integers, so results do not depend on the thread count.
inline MonteCarloEstimate monte_carlo(const ProbabilityTable& table, const Graph& g, std::uint64_t trials,
                                      std::uint64_t seed) {
  if (trials < 1) throw ParameterError("trials", "need at least one trial");
  const std::size_t k = table.num_parts();
  constexpr std::uint64_t kBlock = 2048;
  const std::size_t blocks = static_cast<std::size_t>((trials + kBlock - 1) / kBlock);
  std::vector<detail::MomentSums> partial(blocks, detail::MomentSums(k));
  parallel_for(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kBlock);
    std::vector<std::uint64_t> vol(k), internal(k);
    for (std::uint64_t t = b * kBlock; t < end; ++t) {
      auto p = sample_partition(table, seed, t);
      std::fill(vol.begin(), vol.end(), 0);
      std::fill(internal.begin(), internal.end(), 0);
      for (std::size_t v = 0; v < g.num_vertices(); ++v) vol[p.label(static_cast<Vertex>(v))] += g.degree(static_cast<Vertex>(v));
      for (const auto& e : g.edges())
        if (p.label(e.u) == p.label(e.v)) internal[p.label(e.u)] += 2;
      for (std::size_t j = 0; j < k; ++j) {
        acc.vol[j] += vol[j];
        acc.vol_sq[j] += vol[j] * vol[j];
        acc.internal[j] += internal[j];
        acc.internal_sq[j] += internal[j] * internal[j];
      }
    }
  });
  detail::MomentSums total(k);
  for (const auto& part : partial) {
    for (std::size_t j = 0; j < k; ++j) {
      total.vol[j] += part.vol[j];
      total.vol_sq[j] += part.vol_sq[j];
      total.internal[j] += part.internal[j];
      total.internal_sq[j] += part.internal_sq[j];
    }
  }
  return {trials, detail::finish_moments(total.vol, total.vol_sq, trials),
          detail::finish_moments(total.internal, total.internal_sq, trials)};
}

struct ExpectationReport {
  double mu = 0.0;
  std::vector<double> expected_volume;
  std::vector<double> exact_expected_internal;
  /// Labels j < k-1; present only when the table is clamp-free.
  std::optional<std::vector<double>> closed_form_expected_internal;
  std::optional<std::vector<double>> closed_form_expected_internal_unscaled;
  std::optional<MonteCarloEstimate> monte_carlo;
  std::size_t clamped_count = 0;
};

inline ExpectationReport expectation_report(const ProbabilityTable& table, const Graph& g, std::uint64_t trials,
                                            std::uint64_t seed) {
  const auto& o = detail::require_origin(table);
  ExpectationReport r;
  r.mu = common_expected_volume(o.delta, table.num_parts(), g);
  r.expected_volume = expected_volumes(table, g);
  r.exact_expected_internal = expected_internal_edges(table, g);
  r.clamped_count = table.clamped_count();
  if (table.clamped_count() == 0) {
    r.closed_form_expected_internal = closed_form_expected_internal(table, g);
    r.closed_form_expected_internal_unscaled = closed_form_expected_internal_unscaled(table, g);
  }
  if (trials > 0) r.monte_carlo = monte_carlo(table, g, trials, seed);
  return r;
}

struct ConcentrationPart {
  std::size_t part = 0;
  double expected_volume = 0.0;
  std::uint64_t violations = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
  /// 2 exp(-epsilon^2 E[Vol S_j] / (3 Delta))
  double chernoff_ceiling = 0.0;
  bool pass = false;
};

struct ConcentrationReport {
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::size_t max_degree = 0;
  std::vector<ConcentrationPart> parts;
  bool pass() const {
    return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.pass; });
  }
};

/// Frequency of |Vol(S_j) - E Vol(S_j)| > epsilon E Vol(S_j) for labels j < k-1 with positive
/// expected volume. A part passes when frequency <= ceiling + 3 binomial standard errors.
inline ConcentrationReport concentration_diagnostic(const ProbabilityTable& table, const Graph& g, double epsilon,
                                                    std::uint64_t trials, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon", "must be positive");
  if (trials < 1) throw ParameterError("trials", "need at least one trial");
  const std::size_t k = table.num_parts();
  auto expected = expected_volumes(table, g);
  std::vector<std::size_t> tracked;
  for (std::size_t j = 0; j + 1 < k; ++j)
    if (expected[j] > 0.0) tracked.push_back(j);

  std::vector<std::uint64_t> counts(tracked.size(), 0);
  constexpr std::uint64_t kBlock = 1024;
  const std::size_t blocks = static_cast<std::size_t>((trials + kBlock - 1) / kBlock);
  std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(tracked.size(), 0));
  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kBlock);
    std::vector<double> vol(k);
    for (std::uint64_t t = b * kBlock; t < end; ++t) {
      auto p = sample_partition(table, seed, t);
      std::fill(vol.begin(), vol.end(), 0.0);
      for (std::size_t v = 0; v < g.num_vertices(); ++v)
        vol[p.label(static_cast<Vertex>(v))] += static_cast<double>(g.degree(static_cast<Vertex>(v)));
      for (std::size_t i = 0; i < tracked.size(); ++i) {
        const std::size_t j = tracked[i];
        if (std::abs(vol[j] - expected[j]) > epsilon * expected[j]) ++partial[b][i];
      }
    }
  });
  for (const auto& part : partial)
    for (std::size_t i = 0; i < tracked.size(); ++i) counts[i] += part[i];

  ConcentrationReport r{epsilon, trials, g.max_degree(), {}};
  const double t = static_cast<double>(trials);
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    ConcentrationPart cp;
    cp.part = tracked[i];
    cp.expected_volume = expected[tracked[i]];
    cp.violations = counts[i];
    cp.frequency = static_cast<double>(counts[i]) / t;
    cp.standard_error = std::sqrt(cp.frequency * (1.0 - cp.frequency) / t);
    cp.chernoff_ceiling =
        2.0 * std::exp(-epsilon * epsilon * cp.expected_volume / (3.0 * static_cast<double>(g.max_degree())));
    cp.pass = cp.frequency <= cp.chernoff_ceiling + 3.0 * cp.standard_error;
    r.parts.push_back(cp);
  }
  return r;
}

struct SearchResult {
  Partition partition;
  PartitionQuality quality;
  std::uint64_t best_trial = 0;
  std::uint64_t discarded = 0;
  std::uint64_t trials = 0;
  std::size_t clamped_count = 0;
};

/// Samples cfg.trials partitions (trial t from stream (cfg.seed, t)) and keeps the one with the
/// smallest h_avg, lowest trial index on ties. Samples with an empty part are discarded.
inline SearchResult best_partition_search(const Spectrum& spec, const Graph& g, const RoundingConfig& cfg) {
  auto table = probability_table(spec, g, cfg);
  const std::uint64_t trials = cfg.trials;
  std::vector<double> scores(trials, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> kept(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    auto p = sample_partition(table, cfg.seed, t);
    if (p.has_empty_part()) return;
    try {
      scores[t] = h_k_partition(g, p).h_avg;
      kept[t] = 1;
    } catch (const DomainError&) {
    }
  });
  SearchResult r;
  r.trials = trials;
  r.clamped_count = table.clamped_count();
  bool found = false;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (!kept[t]) {
      ++r.discarded;
      continue;
    }
    if (!found || scores[t] < scores[r.best_trial]) {
      r.best_trial = t;
      found = true;
    }
  }
  if (!found)
    throw SearchFailure("all " + std::to_string(trials) +
                        " sampled partitions had an empty part; raise trials or lower delta");
  auto best = sample_partition(table, cfg.seed, r.best_trial);
  r.quality = h_k_partition(g, best);
  r.partition = Partition(best.num_parts(), std::vector<std::uint32_t>(best.labels().begin(), best.labels().end()));
  return r;
}

} // namespace kcheeger

#endif // KCHEEGER_ROUNDING_HPP
