#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "llmoea/metrics.hpp"
#include "llmoea/problems.hpp"
#include "oracles.hpp"

using namespace llmoea;

namespace {

// Identity-normalization frame: ideal (0,..), nadir (1,..), reference 1.1.
MetricContext unit_ctx(std::size_t m) {
  std::vector<ObjectiveVector> diagonal;
  for (std::size_t k = 0; k < m; ++k) {
    ObjectiveVector p(m, 0.0);
    p[k] = 1.0;
    diagonal.push_back(std::move(p));
  }
  return make_metric_context(diagonal);
}

}  // namespace

TEST_CASE("metric context captures the extremes and validates input") {
  const MetricContext ctx = make_metric_context({{0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}});
  CHECK(ctx.ideal == ObjectiveVector{0.0, 0.0});
  CHECK(ctx.nadir == ObjectiveVector{1.0, 1.0});
  CHECK(ctx.ref_multiplier == 1.1);

  CHECK_THROWS_AS(make_metric_context({}), std::invalid_argument);
  CHECK_THROWS_AS(make_metric_context({{0.0, 1.0}, {1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_metric_context({{0.0, 1.0}, {1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_metric_context({{0.0, 1.0}, {1.0, 0.0}}, 1.0), std::invalid_argument);
}

TEST_CASE("nondominated filtering preserves order and duplicates of kept points") {
  const std::vector<ObjectiveVector> pts{
      {0.5, 0.5}, {1.0, 1.0}, {0.0, 1.0}, {0.5, 0.5}, {2.0, 0.0}};
  const auto kept = nondominated_subset(pts);
  REQUIRE(kept.size() == 4);
  CHECK(kept[0] == ObjectiveVector{0.5, 0.5});
  CHECK(kept[1] == ObjectiveVector{0.0, 1.0});
  CHECK(kept[2] == ObjectiveVector{0.5, 0.5});
  CHECK(kept[3] == ObjectiveVector{2.0, 0.0});
  CHECK(nondominated_subset({}).empty());
}

TEST_CASE("hypervolume of hand-measured 2d sets") {
  const MetricContext ctx = unit_ctx(2);
  CHECK(hypervolume({}, ctx) == 0.0);
  // A point at the ideal dominates the whole reference box.
  CHECK(hypervolume({{0.0, 0.0}}, ctx) == doctest::Approx(1.0).epsilon(1e-15));
  // (1.1-0.5)^2 / 1.1^2
  CHECK(hypervolume({{0.5, 0.5}}, ctx) ==
        doctest::Approx(0.2975206611570248).epsilon(1e-14));
  // 0.27 + 0.27 - 0.09 over 1.21.
  CHECK(hypervolume({{0.2, 0.8}, {0.8, 0.2}}, ctx) ==
        doctest::Approx(0.3719008264462810).epsilon(1e-14));
  // Dominated and duplicate points change nothing.
  CHECK(hypervolume({{0.2, 0.8}, {0.8, 0.2}, {0.9, 0.9}, {0.2, 0.8}}, ctx) ==
        doctest::Approx(0.3719008264462810).epsilon(1e-14));
  // At or beyond the reference corner on any axis contributes nothing.
  CHECK(hypervolume({{1.1, 0.1}}, ctx) == 0.0);
  CHECK(hypervolume({{1.2, 0.1}, {0.1, 1.3}}, ctx) == 0.0);
  // Better than the sampled ideal clamps instead of overflowing past 1.
  CHECK(hypervolume({{-0.3, 0.5}}, ctx) ==
        doctest::Approx(0.5454545454545454).epsilon(1e-14));
}

TEST_CASE("hypervolume of hand-measured 3d sets") {
  const MetricContext ctx = unit_ctx(3);
  CHECK(hypervolume({{0.0, 0.0, 0.0}}, ctx) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hypervolume({{0.5, 0.5, 0.5}}, ctx) ==
        doctest::Approx(0.1622839969947408).epsilon(1e-14));
  // 0.243 + 0.081 - 0.027 over 1.331.
  CHECK(hypervolume({{0.2, 0.2, 0.8}, {0.8, 0.8, 0.2}}, ctx) ==
        doctest::Approx(0.2231404958677686).epsilon(1e-14));
}

TEST_CASE("hypervolume rejects unsupported dimensionalities") {
  MetricContext ctx;
  ctx.ideal = {0.0};
  ctx.nadir = {1.0};
  CHECK_THROWS_AS(hypervolume({{0.5}}, ctx), std::invalid_argument);
  const MetricContext ctx2 = unit_ctx(2);
  CHECK_THROWS_AS(hypervolume({{0.5, 0.5, 0.5}}, ctx2), std::invalid_argument);
}

TEST_CASE("hypervolume grows monotonically and ignores dominated points") {
  std::mt19937_64 eng(91);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const MetricContext ctx = unit_ctx(m);
    auto pts = oracle::random_objectives(eng, 3 + eng() % 20, m);
    double previous = 0.0;
    std::vector<ObjectiveVector> prefix;
    for (const auto& p : pts) {
      prefix.push_back(p);
      const double hv = hypervolume(prefix, ctx);
      CHECK(hv >= previous - 1e-15);
      previous = hv;
    }
    CHECK(hypervolume(nondominated_subset(pts), ctx) ==
          doctest::Approx(previous).epsilon(1e-13));
  }
}

TEST_CASE("hypervolume agrees with a monte carlo estimate") {
  std::mt19937_64 eng(2718);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t m = trial < 5 ? 2 : 3;
    const MetricContext ctx = unit_ctx(m);
    const auto pts = oracle::random_objectives(eng, 4 + eng() % 22, m);
    const double exact = hypervolume(pts, ctx);
    const double estimate = oracle::mc_hypervolume(pts, ctx, 200000, 1000 + trial);
    CHECK(std::abs(exact - estimate) < 5e-3);
  }
}

TEST_CASE("hypervolume of dense true-front samples approaches the analytic value") {
  // ZDT1 front y = 1 - sqrt(x): normalized box integral gives
  // (1.1^2 - integral of min region) / 1.21 = 0.7245...; pin the bracket.
  const auto samples = true_pf_samples("ZDT1", 4000);
  const MetricContext ctx = make_metric_context(samples);
  const double hv = hypervolume(samples, ctx);
  CHECK(hv > 0.715);
  CHECK(hv < 0.725);
}

TEST_CASE("igd of hand-measured sets") {
  const std::vector<ObjectiveVector> front{{0.0, 0.0}, {1.0, 1.0}};
  CHECK(igd({{0.0, 0.0}}, front) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(igd({{0.0, 0.0}, {1.0, 1.0}}, front) == 0.0);
  CHECK(igd({}, front) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(igd({{0.0, 0.0}}, {}), std::invalid_argument);
  // Raw objective space: scaling the front scales the distance.
  const std::vector<ObjectiveVector> scaled{{0.0, 0.0}, {10.0, 10.0}};
  CHECK(igd({{0.0, 0.0}}, scaled) ==
        doctest::Approx(std::sqrt(200.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("igd never increases when points are added") {
  std::mt19937_64 eng(14);
  const auto front = true_pf_samples("ZDT1", 300);
  auto pts = oracle::random_objectives(eng, 1, 2);
  double previous = igd(pts, front);
  for (int i = 0; i < 50; ++i) {
    pts.push_back(oracle::random_objectives(eng, 1, 2).front());
    const double now = igd(pts, front);
    CHECK(now <= previous + 1e-15);
    previous = now;
  }
}
