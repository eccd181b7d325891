#ifndef KCHEEGER_ORACLE_HPP
#define KCHEEGER_ORACLE_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcheeger/cheeger.hpp"
#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"

namespace kcheeger {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

template <typename Witness>
struct OracleResult {
  Rational optimum;
  Witness argmin;
  std::uint64_t enumerated = 0;
};

inline constexpr std::size_t kMaxClassicalVertices = 24;
inline constexpr std::size_t kMaxPartitionVertices = 13;
inline constexpr double kMaxPartitionCount = 3.0e7;
inline constexpr std::size_t kMaxCorpusVertices = 7;

/// Stirling number of the second kind, in double (exact below 2^53).
inline double stirling2(std::size_t n, std::size_t k) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(k + 1, 0.0));
  s[0][0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= std::min(i, k); ++j) s[i][j] = static_cast<double>(j) * s[i - 1][j] + s[i - 1][j - 1];
  return s[n][k];
}

namespace detail {

template <typename Fn>
void rgs_recurse(std::vector<std::uint32_t>& labels, std::size_t pos, std::uint32_t used, std::size_t k, Fn& fn,
                 std::uint64_t& count) {
  const std::size_t n = labels.size();
  if (pos == n) {
    ++count;
    fn(std::span<const std::uint32_t>(labels));
    return;
  }
  const std::size_t remaining_after = n - pos - 1;
  const std::uint32_t top = std::min<std::uint32_t>(used, static_cast<std::uint32_t>(k - 1));
  for (std::uint32_t l = 0; l <= top; ++l) {
    const std::uint32_t now_used = l == used ? used + 1 : used;
    if (remaining_after + now_used < k) continue;
    labels[pos] = l;
    rgs_recurse(labels, pos + 1, now_used, k, fn, count);
  }
}

} // namespace detail

/// Visits every partition of {0..n-1} into exactly k nonempty blocks once, as a
/// restricted-growth string (labels[0] = 0, labels[i] <= 1 + max(labels[0..i-1])).
/// Returns the number visited, S(n, k).
template <typename Fn>
std::uint64_t for_each_set_partition(std::size_t n, std::size_t k, Fn&& fn) {
  if (k == 0 || k > n) return 0;
  std::vector<std::uint32_t> labels(n, 0);
  std::uint64_t count = 0;
  detail::rgs_recurse(labels, 0, 0, k, fn, count);
  return count;
}

namespace detail {

inline Rational ratio(std::size_t num, std::size_t den) {
  if (den == 0) return Rational(0);
  return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

inline Rational exact_h_avg(const PartTallies& t) {
  Rational sum = 0;
  for (std::size_t i = 0; i < t.k; ++i)
    for (std::size_t j = i + 1; j < t.k; ++j) sum += ratio(t.between(i, j), std::min(t.volumes[i], t.volumes[j]));
  return sum / static_cast<long long>(t.k);
}

inline Rational exact_h_worst(const PartTallies& t, std::size_t total_volume) {
  Rational worst = 0;
  for (std::size_t i = 0; i < t.k; ++i) {
    std::size_t boundary = 0;
    for (std::size_t j = 0; j < t.k; ++j)
      if (j != i) boundary += t.between(i, j);
    Rational r = ratio(boundary, std::min(t.volumes[i], total_volume - t.volumes[i]));
    if (r > worst) worst = r;
  }
  return worst;
}

inline double approx_h_avg(const PartTallies& t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.k; ++i)
    for (std::size_t j = i + 1; j < t.k; ++j) sum += guarded_ratio(t.between(i, j), std::min(t.volumes[i], t.volumes[j]));
  return sum / static_cast<double>(t.k);
}

inline double approx_h_worst(const PartTallies& t, std::size_t total_volume) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.k; ++i) {
    std::size_t boundary = 0;
    for (std::size_t j = 0; j < t.k; ++j)
      if (j != i) boundary += t.between(i, j);
    worst = std::max(worst, guarded_ratio(boundary, std::min(t.volumes[i], total_volume - t.volumes[i])));
  }
  return worst;
}

inline void check_partition_capacity(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) throw ParameterError("k", "need 1 <= k <= n, got k = " + std::to_string(k));
  if (n > kMaxPartitionVertices)
    throw CapacityError("exhaustive partition search supports n <= " + std::to_string(kMaxPartitionVertices) +
                        ", got n = " + std::to_string(n));
  if (stirling2(n, k) > kMaxPartitionCount)
    throw CapacityError("S(" + std::to_string(n) + "," + std::to_string(k) + ") partitions exceed the enumeration cap");
}

// Doubles screen candidates; only those within 1e-9 of the running best are
// evaluated exactly. Double error here is ~1e-15, so no true minimizer is skipped.
template <typename Approx, typename Exact>
OracleResult<Partition> minimize_over_partitions(const Graph& g, std::size_t k, Approx approx, Exact exact) {
  check_partition_capacity(g, k);
  bool have = false;
  double best_approx = 0.0;
  Rational best;
  std::vector<std::uint32_t> best_labels;
  auto count = for_each_set_partition(g.num_vertices(), k, [&](std::span<const std::uint32_t> labels) {
    auto t = tally_parts(g, labels, k);
    const double a = approx(t);
    if (have && a > best_approx + 1e-9) return;
    Rational e = exact(t);
    if (!have || e < best) {
      best = e;
      best_approx = to_double(e);
      best_labels.assign(labels.begin(), labels.end());
      have = true;
    }
  });
  return {best, Partition(k, std::move(best_labels)), count};
}

} // namespace detail

/// Exact h^(k)(S) of one partition.
inline Rational exact_h_avg(const Graph& g, const Partition& p) {
  return detail::exact_h_avg(tally_parts(g, p.labels(), p.num_parts()));
}

inline Rational exact_h_worst(const Graph& g, const Partition& p) {
  return detail::exact_h_worst(tally_parts(g, p.labels(), p.num_parts()), g.volume());
}

/// min over partitions into exactly k nonempty parts of (1/k) sum_{i<j} e(S_i,S_j)/min(Vol S_i, Vol S_j).
inline OracleResult<Partition> exact_h_k(const Graph& g, std::size_t k) {
  return detail::minimize_over_partitions(
      g, k, [](const PartTallies& t) { return detail::approx_h_avg(t); },
      [](const PartTallies& t) { return detail::exact_h_avg(t); });
}

/// min over partitions into exactly k nonempty parts of max_i h(S_i).
inline OracleResult<Partition> exact_h_k_worst(const Graph& g, std::size_t k) {
  const std::size_t vol = g.volume();
  return detail::minimize_over_partitions(
      g, k, [vol](const PartTallies& t) { return detail::approx_h_worst(t, vol); },
      [vol](const PartTallies& t) { return detail::exact_h_worst(t, vol); });
}

/// min over nonempty proper subsets S of e(S, S^c) / min(Vol S, Vol S^c).
///
/// Only subsets containing vertex 0 are visited (h is complement-symmetric), in
/// Gray-code order so each step updates the cut and volume in O(1).
inline OracleResult<VertexSet> exact_classical_cheeger(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw ParameterError("n", "classical Cheeger constant needs at least 2 vertices");
  if (n > kMaxClassicalVertices)
    throw CapacityError("subset enumeration supports n <= " + std::to_string(kMaxClassicalVertices) +
                        ", got n = " + std::to_string(n));
  if (!is_connected(g)) {
    auto comp = component_labels(g);
    VertexSet witness(n);
    for (std::size_t v = 0; v < n; ++v)
      if (comp[v] == comp[0]) witness.insert(static_cast<Vertex>(v));
    return {Rational(0), witness, 0};
  }

  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  const std::size_t total = g.volume();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::uint32_t set = 1u; // {0}
  std::size_t vol = g.degree(0);
  std::size_t cut = g.degree(0);

  bool have = false;
  double best_approx = 0.0;
  Rational best;
  std::uint32_t best_set = 0;
  std::uint64_t enumerated = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (i > 0) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(i)) + 1;
      const std::uint32_t m = 1u << bit;
      const std::size_t d = g.degree(bit);
      if (set & m) {
        set &= ~m;
        cut -= d - 2 * static_cast<std::size_t>(std::popcount(adj[bit] & set));
        vol -= d;
      } else {
        cut += d - 2 * static_cast<std::size_t>(std::popcount(adj[bit] & set));
        set |= m;
        vol += d;
      }
    }
    if (set == full) continue;
    ++enumerated;
    const std::size_t denom = std::min(vol, total - vol);
    const double a = static_cast<double>(cut) / static_cast<double>(denom);
    if (have && a > best_approx + 1e-9) continue;
    Rational e(static_cast<long long>(cut), static_cast<long long>(denom));
    if (!have || e < best) {
      best = e;
      best_approx = to_double(e);
      best_set = set;
      have = true;
    }
  }
  VertexSet witness(n);
  for (std::size_t v = 0; v < n; ++v)
    if (best_set & (1u << v)) witness.insert(static_cast<Vertex>(v));
  return {best, witness, enumerated};
}

/// Closed-form h^(k) of K_n at an equipartition: with r = n mod k,
/// (1/(k(n-1))) [C(r,2) ceil(n/k) + C(k-r,2) floor(n/k) + (C(k,2) - C(r,2) - C(k-r,2)) ceil(n/k)].
inline Rational complete_graph_equipartition_value(std::size_t n, std::size_t k) {
  if (k < 2 || k > n) throw ParameterError("k", "need 2 <= k <= n");
  auto choose2 = [](long long m) { return m * (m - 1) / 2; };
  const long long r = static_cast<long long>(n % k);
  const long long kk = static_cast<long long>(k);
  const long long hi = static_cast<long long>((n + k - 1) / k);
  const long long lo = static_cast<long long>(n / k);
  const long long mixed = choose2(kk) - choose2(r) - choose2(kk - r);
  Rational sum = Rational(choose2(r) * hi + choose2(kk - r) * lo + mixed * hi);
  return sum / Rational(kk * static_cast<long long>(n - 1));
}

// ---- exhaustive corpus of connected labeled graphs ----

struct CorpusEntry {
  std::size_t n = 0;
  std::uint32_t mask = 0; // bit b set <=> b-th pair (u < v, lexicographic) is an edge
};

inline Graph graph_from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask & (1u << bit)) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

namespace detail {

inline bool mask_connected(std::size_t n, std::uint32_t mask, const std::vector<std::pair<unsigned, unsigned>>& pairs) {
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    if (mask & (1u << b)) {
      adj[pairs[b].first] |= 1u << pairs[b].second;
      adj[pairs[b].second] |= 1u << pairs[b].first;
    }
  }
  std::uint32_t seen = 1u;
  std::uint32_t frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1;
}

} // namespace detail

/// Masks of every connected labeled graph on exactly n vertices, ascending.
inline std::vector<std::uint32_t> connected_graph_masks(std::size_t n) {
  if (n > kMaxCorpusVertices)
    throw CapacityError("labeled graph enumeration supports n <= " + std::to_string(kMaxCorpusVertices));
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<std::uint32_t> out;
  if (n == 0) return out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t m = 0; m < total; ++m)
    if (detail::mask_connected(n, static_cast<std::uint32_t>(m), pairs)) out.push_back(static_cast<std::uint32_t>(m));
  return out;
}

/// Every connected labeled graph with 2 <= n <= n_max, ordered by n then mask.
inline std::vector<CorpusEntry> exhaustive_corpus(std::size_t n_max) {
  if (n_max > kMaxCorpusVertices)
    throw CapacityError("corpus supports n_max <= " + std::to_string(kMaxCorpusVertices) + ", got " +
                        std::to_string(n_max));
  std::vector<CorpusEntry> out;
  for (std::size_t n = 2; n <= n_max; ++n)
    for (auto m : connected_graph_masks(n)) out.push_back({n, m});
  return out;
}

} // namespace kcheeger

#endif // KCHEEGER_ORACLE_HPP
