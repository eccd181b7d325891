#include <gtest/gtest.h>

#include <random>

#include "kcheeger/kcheeger.hpp"
#include "test_support.hpp"

using namespace kcheeger;

namespace {

/// K_4 spectrum restricted to v_0 and a chosen unit eigenvector for 4/3.
Spectrum k4_with_vector(const Graph& k4, std::vector<double> v1) {
  double nrm = norm2(v1);
  for (double& x : v1) x /= nrm;
  return spectrum_from_basis(build_laplacian(k4), {{0.5, 0.5, 0.5, 0.5}, v1});
}

RoundingConfig config(std::size_t k, double delta, Variant variant = Variant::main, std::uint64_t trials = 1,
                      std::uint64_t seed = 0) {
  RoundingConfig c;
  c.k = k;
  c.delta = delta;
  c.variant = variant;
  c.trials = trials;
  c.seed = seed;
  return c;
}

void expect_rows_valid(const ProbabilityTable& t) {
  for (std::size_t v = 0; v < t.num_vertices(); ++v) {
    double s = 0.0;
    for (double p : t.row(v)) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

} // namespace

TEST(RoundingConfig, Validation) {
  EXPECT_THROW(config(1, 0.1).validate(), ParameterError);
  EXPECT_THROW(config(2, 0.5).validate(), ParameterError);
  EXPECT_THROW(config(2, 0.6).validate(), ParameterError);
  EXPECT_THROW(config(2, -0.1).validate(), ParameterError);
  EXPECT_THROW(config(2, 0.1, Variant::main, 0).validate(), ParameterError);
  EXPECT_NO_THROW(config(3, 0.0).validate());
  EXPECT_NEAR(default_delta(1000), 0.1, 1e-12);
  EXPECT_EQ(default_delta(8), 0.25);
  EXPECT_EQ(parse_variant("nonpos"), Variant::nonpos);
  EXPECT_THROW(parse_variant("other"), ParameterError);
}

TEST(ProbabilityTable, CompleteGraphInjectedPairVectorClamps) {
  auto k4 = complete_graph(4);
  auto spec = k4_with_vector(k4, {1, -1, 0, 0});
  auto t = probability_table(spec, k4, config(2, 0.1));
  EXPECT_NEAR(t.p(0, 0), 0.9, 1e-12);
  EXPECT_EQ(t.p(1, 0), 0.0);
  EXPECT_NEAR(t.p(2, 0), 0.4, 1e-12);
  EXPECT_NEAR(t.p(3, 0), 0.4, 1e-12);
  EXPECT_EQ(t.clamped_count(), 1u);
  EXPECT_NEAR(t.p(1, 1), 1.0, 1e-12);
  expect_rows_valid(t);
}

TEST(ProbabilityTable, ZeroEigenvectorEntryGivesBaseProbability) {
  auto k4 = complete_graph(4);
  auto spec = k4_with_vector(k4, {1, -1, 0, 0});
  for (double delta : {0.0, 0.1, 0.3}) {
    auto t = probability_table(spec, k4, config(2, delta));
    EXPECT_NEAR(t.p(2, 0), (1 - 2 * delta) / 2, 1e-12);
  }
}

TEST(ProbabilityTable, RowsValidAndDrivenMassBounded) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 6 + rng() % 20;
    auto g = testutil::random_connected_graph(n, 0.35, rng);
    auto spec = eigendecompose(g);
    std::size_t k = 2 + rng() % 3;
    double delta = std::uniform_real_distribution<double>(0.0, 0.45)(rng);
    for (auto variant : {Variant::main, Variant::nonpos}) {
      auto t = probability_table(spec, g, config(k, delta, variant));
      expect_rows_valid(t);
      for (std::size_t v = 0; v < n; ++v) {
        double driven = 0.0;
        for (std::size_t j = 0; j + 1 < k; ++j) driven += t.p(v, j);
        EXPECT_LE(driven, 1.0 - delta + 1e-12);
      }
      if (t.clamped_count() == 0) {
        auto xs = harmonic_basis(spec, g, k);
        double alpha = 0.0;
        for (std::size_t i = 1; i < k; ++i) alpha += norm_inf(xs[i]);
        for (std::size_t v = 0; v < n; ++v) {
          for (std::size_t j = 0; j + 1 < k; ++j) {
            double d = variant == Variant::main ? norm_inf(xs[j + 1]) : alpha;
            double expected = (1 - 2 * delta) / (2.0 * (k - 1)) + xs[j + 1][v] / (2.0 * (k - 1) * d);
            EXPECT_NEAR(t.p(v, j), expected, 1e-14);
          }
        }
      }
    }
  }
}

TEST(ProbabilityTable, DegenerateEigenvectorIsAnError) {
  // K_3 plus an isolated vertex: lambda_1 = 0 belongs to the isolated indicator, whose harmonic vector is 0.
  std::vector<Graph> parts{Graph(1, {}), complete_graph(3)};
  auto g = disjoint_union(parts);
  const double c = 1.0 / std::sqrt(3.0);
  auto spec = spectrum_from_basis(build_laplacian(g), {{0, c, c, c}, {1, 0, 0, 0}});
  EXPECT_THROW(probability_table(spec, g, config(2, 0.1)), NumericalError);
}

TEST(SamplePartition, PointMassAndDeterminism) {
  auto t = ProbabilityTable::from_rows(3, std::vector<std::vector<double>>(5, {1.0, 0.0, 0.0}));
  auto p = sample_partition(t, 9);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(p.label(v), 0u);

  auto k4 = complete_graph(4);
  auto spec = k4_with_vector(k4, {1, -1, 0, 0});
  auto table = probability_table(spec, k4, config(2, 0.1));
  EXPECT_EQ(sample_partition(table, 42), sample_partition(table, 42));
  EXPECT_THROW(ProbabilityTable::from_rows(2, {{0.5, 0.6}}), ValidationError);
}

TEST(SamplePartition, EmpiricalFrequencyMatchesTable) {
  auto k4 = complete_graph(4);
  auto table = probability_table(k4_with_vector(k4, {1, -1, 0, 0}), k4, config(2, 0.1));
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) hits += sample_partition(table, 1234, t).label(0) == 0;
  const double sigma = std::sqrt(0.9 * 0.1 / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, 0.9, 3 * sigma);
}

TEST(ExpectedVolumes, Examples) {
  auto k4 = complete_graph(4);
  auto spec = k4_with_vector(k4, {3, -1, -1, -1});
  auto t = probability_table(spec, k4, config(2, 0.1));
  ASSERT_EQ(t.clamped_count(), 0u);
  auto ev = expected_volumes(t, k4);
  EXPECT_NEAR(ev[0], 4.8, 1e-12);
  EXPECT_NEAR(common_expected_volume(0.1, 2, k4), 4.8, 1e-12);

  EXPECT_NEAR(common_expected_volume(0.5 - 1e-12, 2, k4), 0.0, 1e-9);

  auto uniform = ProbabilityTable::from_rows(3, std::vector<std::vector<double>>(4, {0.25, 0.25, 0.5}));
  auto uv = expected_volumes(uniform, k4);
  EXPECT_NEAR(uv[0], 3.0, 1e-12);
  EXPECT_NEAR(uv[2], 6.0, 1e-12);
}

TEST(ExpectedVolumes, PartIndependentWhenClampFree) {
  std::mt19937_64 rng(73);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    auto g = testutil::random_connected_graph(8 + rng() % 12, 0.5, rng);
    auto spec = eigendecompose(g);
    auto t = probability_table(spec, g, config(4, 0.02, Variant::nonpos));
    if (t.clamped_count() != 0) continue;
    ++checked;
    auto ev = expected_volumes(t, g);
    const double mu = common_expected_volume(0.02, 4, g);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(ev[j], mu, 1e-9);
  }
  EXPECT_GE(checked, 10);
}

TEST(ExpectedInternalEdges, Examples) {
  auto k4 = complete_graph(4);
  auto point = ProbabilityTable::from_rows(2, std::vector<std::vector<double>>(4, {1.0, 0.0}));
  auto e = expected_internal_edges(point, k4);
  EXPECT_NEAR(e[0], 12.0, 1e-12);
  EXPECT_EQ(e[1], 0.0);

  auto spec = k4_with_vector(k4, {3, -1, -1, -1});
  auto t = probability_table(spec, k4, config(2, 0.1));
  // ||x_1||_inf = 3/sqrt(12)/sqrt(3) = 1/2, lambda_1 = 4/3.
  const double closed = 0.16 * 12 + (1 - 4.0 / 3.0) / (4 * 0.25);
  EXPECT_NEAR(expected_internal_edges(t, k4)[0], closed, 1e-9);
  EXPECT_NEAR(closed_form_expected_internal(t, k4)[0], closed, 1e-12);
  EXPECT_NEAR(closed_form_expected_internal_unscaled(t, k4)[0], closed, 1e-12);
}

TEST(ExpectedInternalEdges, ClosedFormOnClampFreeTables) {
  std::mt19937_64 rng(79);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    auto g = testutil::random_connected_graph(8 + rng() % 16, 0.45, rng);
    auto spec = eigendecompose(g);
    std::size_t k = 2 + trial % 3;
    auto variant = trial % 2 ? Variant::nonpos : Variant::main;
    auto t = probability_table(spec, g, config(k, 0.03, variant));
    if (t.clamped_count() != 0) continue;
    ++checked;
    auto exact = expected_internal_edges(t, g);
    auto closed = closed_form_expected_internal(t, g);
    auto unscaled = closed_form_expected_internal_unscaled(t, g);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      EXPECT_NEAR(exact[j], closed[j], 1e-9);
      if (k == 2) {
        EXPECT_NEAR(exact[j], unscaled[j], 1e-9);
      }
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(MonteCarlo, MeansConvergeToExactExpectations) {
  std::mt19937_64 rng(83);
  auto g = testutil::random_connected_graph(15, 0.4, rng);
  auto spec = eigendecompose(g);
  auto t = probability_table(spec, g, config(3, 0.1));
  auto mc = monte_carlo(t, g, 100000, 5);
  auto ev = expected_volumes(t, g);
  auto ei = expected_internal_edges(t, g);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(mc.volume.mean[j], ev[j], 4 * mc.volume.standard_error[j]);
    EXPECT_NEAR(mc.internal.mean[j], ei[j], 4 * mc.internal.standard_error[j]);
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  std::mt19937_64 rng(89);
  auto g = testutil::random_connected_graph(12, 0.4, rng);
  auto t = probability_table(eigendecompose(g), g, config(3, 0.1));
  setenv("KCHEEGER_THREADS", "1", 1);
  auto a = monte_carlo(t, g, 10000, 3);
  setenv("KCHEEGER_THREADS", "4", 1);
  auto b = monte_carlo(t, g, 10000, 3);
  unsetenv("KCHEEGER_THREADS");
  EXPECT_EQ(a.volume.mean, b.volume.mean);
  EXPECT_EQ(a.internal.standard_error, b.internal.standard_error);
}

// Independent check of E[x^T A x] = mu^T A mu for hollow symmetric A and independent entries.
TEST(HollowQuadraticForm, SampleMeanMatchesMeanVectorForm) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), prob(0.0, 1.0);
  const int trials = 20000;
  for (int m = 0; m < 100; ++m) {
    std::size_t n = 2 + rng() % 7;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) a[i][j] = a[j][i] = unit(rng);
    std::vector<double> mu(n);
    for (double& p : mu) p = prob(rng);
    double predicted = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) predicted += mu[i] * a[i][j] * mu[j];
    double sum = 0.0, sum_sq = 0.0;
    std::vector<int> x(n);
    for (int t = 0; t < trials; ++t) {
      for (std::size_t i = 0; i < n; ++i) x[i] = prob(rng) < mu[i];
      double q = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += x[i] * a[i][j] * x[j];
      sum += q;
      sum_sq += q * q;
    }
    const double mean = sum / trials;
    const double se = std::sqrt(std::max(0.0, sum_sq / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, predicted, 4 * se + 1e-12) << "matrix " << m;
  }
}

TEST(Concentration, HugeAndTinyEpsilon) {
  auto k4 = complete_graph(4);
  auto t = probability_table(k4_with_vector(k4, {3, -1, -1, -1}), k4, config(2, 0.1));
  auto huge = concentration_diagnostic(t, k4, 10.0, 2000, 1);
  ASSERT_EQ(huge.parts.size(), 1u);
  EXPECT_EQ(huge.parts[0].violations, 0u);
  EXPECT_TRUE(huge.pass());
  auto tiny = concentration_diagnostic(t, k4, 1e-9, 2000, 1);
  EXPECT_NEAR(tiny.parts[0].chernoff_ceiling, 2.0, 1e-6);
  EXPECT_TRUE(tiny.pass());
  EXPECT_THROW(concentration_diagnostic(t, k4, 0.0, 10, 1), ParameterError);
}

TEST(Concentration, CompleteGraphK50) {
  auto g = complete_graph(50);
  auto spec = eigendecompose(g);
  auto t = probability_table(spec, g, config(3, std::pow(50.0, -1.0 / 3.0)));
  auto r = concentration_diagnostic(t, g, 0.5, 10000, 2024);
  EXPECT_EQ(r.parts.size(), 2u);
  EXPECT_TRUE(r.pass());
}

TEST(BestPartitionSearch, CompleteGraphFindsOptimum) {
  auto k4 = complete_graph(4);
  auto spec = eigendecompose(k4);
  auto r = best_partition_search(spec, k4, config(2, 0.1, Variant::nonpos, 200, 1));
  EXPECT_NEAR(r.quality.h_avg, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(r.partition.has_empty_part());
}

TEST(BestPartitionSearch, SingleTrialEqualsSample) {
  std::mt19937_64 rng(101);
  auto g = testutil::random_connected_graph(12, 0.4, rng);
  auto spec = eigendecompose(g);
  auto cfg = config(2, 0.1, Variant::main, 1, 42);
  auto table = probability_table(spec, g, cfg);
  auto sample = sample_partition(table, 42);
  ASSERT_FALSE(sample.has_empty_part());
  auto r = best_partition_search(spec, g, cfg);
  EXPECT_EQ(r.partition.labels().size(), sample.labels().size());
  EXPECT_TRUE(std::equal(sample.labels().begin(), sample.labels().end(), r.partition.labels().begin()));
  EXPECT_EQ(r.quality.h_avg, h_k_partition(g, sample).h_avg);
}

TEST(BestPartitionSearch, AllDiscardedIsSearchFailure) {
  auto k2 = complete_graph(2);
  auto spec = eigendecompose(k2);
  auto cfg = config(2, 0.45, Variant::main, 1, 0);
  auto table = probability_table(spec, k2, cfg);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (sample_partition(table, seed).has_empty_part()) {
      cfg.seed = seed;
      EXPECT_THROW(best_partition_search(spec, k2, cfg), SearchFailure);
      return;
    }
  }
  FAIL() << "no seed produced an empty part";
}

TEST(BestPartitionSearch, DeterministicAcrossThreadCounts) {
  auto g = planted_partition_graph(30, 3, 0.9, 0.05, 7);
  auto spec = eigendecompose(g);
  auto cfg = config(3, 0.1, Variant::main, 300, 11);
  setenv("KCHEEGER_THREADS", "1", 1);
  auto a = best_partition_search(spec, g, cfg);
  setenv("KCHEEGER_THREADS", "3", 1);
  auto b = best_partition_search(spec, g, cfg);
  unsetenv("KCHEEGER_THREADS");
  EXPECT_EQ(a.best_trial, b.best_trial);
  EXPECT_EQ(a.partition, b.partition);
}
