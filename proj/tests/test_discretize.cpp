#include <cmath>
#include <numbers>

#include <doctest.h>

#include "peakon/analysis.hpp"
#include "peakon/bl_metric.hpp"
#include "peakon/discretize.hpp"
#include "peakon/errors.hpp"

using namespace peakon;

TEST_CASE("equal-mass quantization of the uniform density") {
  const PeakonState s = quantize(InitialMeasure::uniform(0.0, 1.0), 2);
  REQUIRE(s.size() == 2);
  CHECK(s.x[0] == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(s.x[1] == doctest::Approx(0.75).epsilon(1e-11));
  CHECK(s.p[0] == 0.5);
  CHECK(s.p[1] == 0.5);
  CHECK(s.t == 0.0);

  const PeakonState sp = quantize(InitialMeasure::uniform(0.0, 1.0), 4, QuantizationRule::EqualSpacing);
  REQUIRE(sp.size() == 4);
  CHECK(sp.x[1] == doctest::Approx(0.375));
  CHECK(sp.p[2] == doctest::Approx(0.25));
}

TEST_CASE("total mass is exactly one") {
  for (const InitialMeasure& m0 : {InitialMeasure::gaussian(0.3, 1.7), InitialMeasure::uniform(-2, 5),
                                   InitialMeasure::cosine_bump(1.0, 2.0)}) {
    for (std::size_t n : {1, 3, 7, 64, 129}) {
      for (auto rule : {QuantizationRule::EqualMass, QuantizationRule::EqualSpacing}) {
        const PeakonState s = quantize(m0, n, rule);
        CHECK_NOTHROW(s.validate());
        CHECK(s.total_momentum() == 1.0);
      }
    }
  }
}

TEST_CASE("atomic initial data") {
  const DiscreteMeasure atoms({{-1.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}});
  const PeakonState same = quantize(InitialMeasure::atomic(atoms), 3);
  CHECK(same.measure() == atoms);
  const PeakonState more = quantize(InitialMeasure::atomic(atoms), 10);
  CHECK(more.measure() == atoms);
  // Unnormalized input is rescaled.
  const PeakonState scaled = quantize(InitialMeasure::atomic(atoms.scaled(4.0)), 3);
  CHECK(scaled.measure() == atoms);
  // Merging keeps the centroid of the closest pair.
  const PeakonState merged = quantize(InitialMeasure::atomic(atoms), 2);
  REQUIRE(merged.size() == 2);
  CHECK(merged.x[0] == doctest::Approx(0.0));
  CHECK(merged.p[0] == doctest::Approx(0.75));
  CHECK_THROWS_AS(InitialMeasure::atomic(DiscreteMeasure({{0.0, -1.0}})), Error);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(quantize(InitialMeasure::uniform(0, 1), 0), Error);
  CHECK_THROWS_AS(InitialMeasure::density({[](double) { return -1.0; }, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(InitialMeasure::density({[](double) { return 0.0; }, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(InitialMeasure::uniform(1, 1), Error);
  CHECK_THROWS_AS(InitialMeasure::gaussian(0, 0), Error);
  // A density concentrated on a sliver cannot host 10^6 distinct quantiles.
  CHECK_THROWS_AS(quantize(InitialMeasure::uniform(0, 1e-9), 100000), DegenerateSupport);
}

TEST_CASE("pairing and CDF of densities") {
  const InitialMeasure g = InitialMeasure::gaussian(0.0, 1.0);
  CHECK(g.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.cdf(1.0) == doctest::Approx(0.5 * std::erfc(-1.0 / std::numbers::sqrt2)).epsilon(1e-10));
  CHECK(g.pair([](double x) { return x * x; }) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.density_at(0.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-10));
  CHECK(g.raw_mass() == doctest::Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-10));
  const InitialMeasure c = InitialMeasure::cosine_bump(0.0, 1.0);
  CHECK(c.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.cdf(-2.0) == 0.0);
  CHECK(c.cdf(2.0) == 1.0);
}

TEST_CASE("weak-star convergence at t = 0") {
  for (const InitialMeasure& m0 : {InitialMeasure::gaussian(0.0, 1.0), InitialMeasure::cosine_bump(0.5, 2.0)}) {
    const auto battery = default_battery();
    REQUIRE(battery.size() == 10);
    for (const TestFunction1D& f : battery) {
      CAPTURE(f.name);
      const double exact = m0.pair(f.f);
      double prev = 1e300;
      for (std::size_t n : {8, 16, 32, 64, 128}) {
        const double err = std::abs(pair(quantize(m0, n).measure(), f.f) - exact);
        CHECK(err < prev);
        prev = err;
      }
      CHECK(prev < 1e-3);
    }
  }
}

TEST_CASE("BL distance between successive quantizations shrinks like 1/N") {
  const InitialMeasure m0 = InitialMeasure::gaussian(0.0, 1.0);
  std::vector<double> d;
  for (std::size_t n : {8, 16, 32, 64}) {
    d.push_back(bl_distance(quantize(m0, n).measure(), quantize(m0, 2 * n).measure()).distance);
  }
  for (std::size_t i = 1; i < d.size(); ++i) {
    CHECK(d[i] < d[i - 1]);
    CHECK(d[i - 1] / d[i] > 1.5);
  }
}

TEST_CASE("field reconstruction") {
  const CHKernel k(1.0);
  const FieldSample one = reconstruct_u0(k, PeakonState{0.0, {0.0}, {1.0}});
  REQUIRE(one.u.size() == 401);
  for (std::size_t i = 0; i < one.u.size(); ++i) {
    const double x = one.grid.at(i);
    REQUIRE(one.u[i] == doctest::Approx(0.5 * std::exp(-std::abs(x))).epsilon(1e-14));
  }
  const FieldSample two = reconstruct_u0(k, PeakonState{0.0, {-1.33, 1.33}, {0.5, 0.5}});
  const std::size_t n = two.u.size();
  for (std::size_t i = 0; i < n; ++i) {
    REQUIRE(std::abs(two.u[i] - two.u[n - 1 - i]) < 1e-15);
    REQUIRE(std::abs(two.ux[i] + two.ux[n - 1 - i]) < 1e-15);
  }
  CHECK_THROWS_AS(sample_field(k, DiscreteMeasure{}, Grid{1.0, 0.0, 3}), Error);
}
