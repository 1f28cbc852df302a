#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "complab/rng.hpp"
#include "complab/stats.hpp"
#include "complab/tasep.hpp"
#include "doctest.h"

using namespace complab;

namespace {

std::vector<double> normal_sample(std::uint64_t seed, size_t n) {
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(r * std::cos(2.0 * M_PI * u2));
    if (out.size() < n) out.push_back(r * std::sin(2.0 * M_PI * u2));
  }
  return out;
}

double identity_cdf(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

TEST_CASE("one-sample KS distance on hand-checked inputs") {
  // For {0.1, 0.5, 0.9} against Uniform[0,1] the sup gap sits at the jumps:
  // max(1/3 - 0.1, 0.9 - 2/3) = 7/30.
  CHECK(ks_distance({0.1, 0.5, 0.9}, identity_cdf) == doctest::Approx(7.0 / 30.0).epsilon(1e-12));

  // Quantile midpoints (2i-1)/(2n) are the best possible fit: distance 1/(2n).
  const int n = 10;
  std::vector<double> mid;
  for (int i = 1; i <= n; ++i) mid.push_back((2.0 * i - 1.0) / (2.0 * n));
  CHECK(ks_distance(mid, identity_cdf) == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));

  // Order must not matter.
  CHECK(ks_distance({0.9, 0.1, 0.5}, identity_cdf) ==
        ks_distance({0.1, 0.5, 0.9}, identity_cdf));

  CHECK_THROWS_AS(ks_distance({}, identity_cdf), std::invalid_argument);
}

TEST_CASE("two-sample KS distance on hand-checked inputs") {
  // a = {1,2,3}, b = {1.5,2.5}: the empirical CDFs differ most right after 1
  // (1/3 vs 0) and right after 2.5 (2/3 vs 1).
  CHECK(ks_two_sample({1.0, 2.0, 3.0}, {1.5, 2.5}).distance ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // Tied values advance both CDFs together before the gap is measured.
  CHECK(ks_two_sample({0.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 1.0, 1.0}).distance ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Disjoint supports give the maximal distance.
  CHECK(ks_two_sample({0.0, 1.0}, {2.0, 3.0}).distance == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ks_two_sample({1.0}, {}), std::invalid_argument);
}

TEST_CASE("two-sample KS p-values behave like a test statistic should") {
  // Identical samples: distance 0, nothing to reject.
  const TwoSampleKs same = ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(same.distance == 0.0);
  CHECK(same.p_value == 1.0);

  // Two equal-size disjoint pairs: d = 1 and n_eff = 1, so the corrected
  // statistic is k = 1.23 and the Kolmogorov tail can be summed by hand.
  const TwoSampleKs tiny = ks_two_sample({0.0, 1.0}, {2.0, 3.0});
  const double k = 1.23;
  const double by_hand = 2.0 * std::exp(-2.0 * k * k) - 2.0 * std::exp(-8.0 * k * k);
  CHECK(tiny.p_value == doctest::Approx(by_hand).epsilon(1e-9));

  // Two draws from the same law: no rejection at any sane level.
  const std::vector<double> a = normal_sample(11, 800);
  const std::vector<double> b = normal_sample(12, 800);
  const TwoSampleKs null_case = ks_two_sample(a, b);
  CHECK(null_case.p_value > 1e-3);
  CHECK(null_case.p_value <= 1.0);

  // Shifting one sample only makes the evidence stronger.
  std::vector<double> small_shift = b, big_shift = b;
  for (double& v : small_shift) v += 0.25;
  for (double& v : big_shift) v += 1.5;
  const double p_small = ks_two_sample(a, small_shift).p_value;
  const double p_big = ks_two_sample(a, big_shift).p_value;
  CHECK(p_small < null_case.p_value);
  CHECK(p_big < 1e-6);
  CHECK(p_big < p_small);
}

TEST_CASE("exponent regression recovers an exact power law") {
  std::vector<double> times, variances;
  const double beta = 4.0 / 3.0, c = 0.37;
  for (int k = 0; k <= 6; ++k) {
    const double t = 50.0 * std::pow(2.0, k);
    times.push_back(t);
    variances.push_back(c * std::pow(t, beta));
  }
  const RegressionResult fit = exponent_regression(times, variances);
  CHECK(fit.points == 7);
  CHECK(fit.slope == doctest::Approx(beta).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(c)).epsilon(1e-10));
  CHECK(fit.slope_stderr < 1e-10);

  SUBCASE("noise shows up in the standard error, not just the slope") {
    std::vector<double> noisy = variances;
    noisy[3] *= 1.3;
    const RegressionResult rough = exponent_regression(times, noisy);
    CHECK(rough.slope_stderr > 1e-3);
  }

  SUBCASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(exponent_regression({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(exponent_regression({1.0, 2.0, 3.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(exponent_regression({1.0, 2.0, 3.0}, {1.0, -2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(exponent_regression({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("the normality screen separates Gaussian from exponential data") {
  const std::vector<double> gauss = normal_sample(21, 4000);
  const NormalityResult ok = normality_check(gauss);
  CHECK(ok.pass);
  CHECK(std::abs(ok.skewness) < 0.15);
  CHECK(std::abs(ok.excess_kurtosis) < 0.3);

  Rng rng(22);
  std::vector<double> expo;
  for (int i = 0; i < 2000; ++i) expo.push_back(rng.exp1());
  const NormalityResult bad = normality_check(expo);
  CHECK(!bad.pass);
  CHECK(bad.skewness > 1.5);
  CHECK(bad.excess_kurtosis > 2.5);

  CHECK_THROWS_AS(normality_check(std::vector<double>(99, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(normality_check(std::vector<double>(200, 0.5)), std::invalid_argument);
}

TEST_CASE("profile distance weighs bins by width and honors the exclusion band") {
  DensityProfile prof;
  prof.bin_width = 0.5;
  prof.k_lo = -2;
  prof.particles = {1, 0, 3, 0, 2};
  prof.sites = {2, 0, 4, 0, 2};
  // Centers -1, -0.5, 0, 0.5, 1 with densities 0.5, -, 0.75, -, 1.0.

  const auto half = [](double) { return 0.5; };
  const ProfileDistance full = profile_l1(prof, half);
  CHECK(full.l1 == doctest::Approx(0.5 * (0.0 + 0.25 + 0.5)).epsilon(1e-12));
  CHECK(full.used_bins == 3);
  CHECK(full.missing_bins == 2);

  const ProfileDistance banded = profile_l1(prof, half, -0.25, 0.25);
  CHECK(banded.l1 == doctest::Approx(0.5 * (0.0 + 0.5)).epsilon(1e-12));
  CHECK(banded.used_bins == 2);
  CHECK(banded.missing_bins == 2);

  CHECK_THROWS_AS(profile_l1(prof, half, -2.0, 2.0), std::invalid_argument);

  // A perfect match integrates to zero.
  const auto exact = [&](double r) {
    if (r < -0.75) return 0.5;
    if (r < 0.75) return 0.75;
    return 1.0;
  };
  CHECK(profile_l1(prof, exact).l1 == doctest::Approx(0.0));
}

TEST_CASE("worker resolution prefers explicit, then the environment, then hardware") {
  unsetenv("COMPETITION_LAB_WORKERS");
  CHECK(resolve_worker_count(3) == 3);
  CHECK(resolve_worker_count(0) >= 1);

  setenv("COMPETITION_LAB_WORKERS", "2", 1);
  CHECK(resolve_worker_count(0) == 2);
  CHECK(resolve_worker_count(5) == 5);

  setenv("COMPETITION_LAB_WORKERS", "abc", 1);
  CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);
  setenv("COMPETITION_LAB_WORKERS", "0", 1);
  CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);
  setenv("COMPETITION_LAB_WORKERS", "-4", 1);
  CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);
  setenv("COMPETITION_LAB_WORKERS", "12x", 1);
  CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);

  unsetenv("COMPETITION_LAB_WORKERS");
  CHECK(resolve_worker_count(0) >= 1);
}

TEST_CASE("replica loops cover every index exactly once at any worker count") {
  for (int workers : {1, 2, 5}) {
    const int count = 97;
    std::vector<std::atomic<int>> hits(static_cast<size_t>(count));
    for (auto& h : hits) h.store(0);
    parallel_for_replicas(count, workers, [&](int i) { hits[static_cast<size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }

  SUBCASE("per-replica outputs do not depend on the worker count") {
    auto run = [](int workers) {
      std::vector<double> out(64, 0.0);
      parallel_for_replicas(64, workers, [&](int i) {
        Rng rng(static_cast<std::uint64_t>(i) + 1);
        double s = 0.0;
        for (int k = 0; k < 100; ++k) s += rng.exp1();
        out[static_cast<size_t>(i)] = s;
      });
      return out;
    };
    const std::vector<double> one = run(1);
    const std::vector<double> four = run(4);
    CHECK(one == four);
  }

  SUBCASE("failures come back with the replica index attached") {
    for (int workers : {1, 3}) {
      bool caught = false;
      try {
        parallel_for_replicas(20, workers, [](int i) {
          if (i == 7) throw std::domain_error("boom");
        });
      } catch (const std::runtime_error& e) {
        caught = true;
        CHECK(std::string(e.what()) == "replica 7: boom");
      }
      CHECK(caught);
    }
  }

  SUBCASE("an empty loop is a no-op") {
    CHECK_NOTHROW(parallel_for_replicas(0, 4, [](int) { throw std::runtime_error("never"); }));
  }
}
