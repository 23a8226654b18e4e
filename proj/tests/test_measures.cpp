#include <cmath>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "peakon/errors.hpp"
#include "peakon/measure.hpp"

using namespace peakon;

TEST_CASE("construction sorts, merges and drops zero atoms") {
  const DiscreteMeasure mu({{2.0, 1.0}, {-1.0, 0.5}, {2.0, -0.25}, {0.0, 0.0}});
  REQUIRE(mu.size() == 2);
  CHECK(mu.atoms()[0].position == -1.0);
  CHECK(mu.atoms()[1].weight == 0.75);
  CHECK(DiscreteMeasure({{1.0, 1.0}, {1.0, -1.0}}).empty());
  CHECK((mu - mu).empty());
  CHECK(mu + mu == mu.scaled(2.0));
  CHECK_THROWS_AS(DiscreteMeasure({{NAN, 1.0}}), Error);
  const std::vector<double> x{0.0, 1.0};
  const std::vector<double> w{1.0};
  CHECK_THROWS_AS(DiscreteMeasure(x, w), Error);
}

TEST_CASE("total variation and pairing") {
  CHECK(tv_norm(DiscreteMeasure::dirac(0.0)) == 1.0);
  CHECK(tv_norm(DiscreteMeasure({{0.0, 0.3}, {1.0, -0.7}})) == doctest::Approx(1.0));
  CHECK(pair(DiscreteMeasure::dirac(2.0), [](double x) { return x; }) == 2.0);
  CHECK(pair(DiscreteMeasure({{-1.0, 0.5}, {1.0, 0.5}}), [](double x) { return x * x; }) == 1.0);
  CHECK(DiscreteMeasure({{0.0, 0.3}, {1.0, -0.7}}).mass() == doctest::Approx(-0.4));
}

TEST_CASE("1-Wasserstein distance") {
  CHECK(w1_distance(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(1.0)) == 1.0);
  const DiscreteMeasure mu({{-1.0, 0.2}, {0.5, 0.3}, {3.0, 0.5}});
  CHECK(w1_distance(mu, mu) == 0.0);
  // Moving half the mass by 2 and the other half by 4.
  const DiscreteMeasure a({{0.0, 0.5}, {1.0, 0.5}});
  const DiscreteMeasure b({{2.0, 0.5}, {5.0, 0.5}});
  CHECK(w1_distance(a, b) == doctest::Approx(3.0));
  CHECK(w1_distance(a, b) == doctest::Approx(w1_distance(b, a)));
  CHECK_THROWS_AS(w1_distance(a, DiscreteMeasure::dirac(0.0, 2.0)), MassMismatch);
  CHECK_THROWS_AS(w1_distance(DiscreteMeasure({{0.0, 1.5}, {1.0, -0.5}}), DiscreteMeasure::dirac(0.0)),
                  MassMismatch);
}

TEST_CASE("JSON round trip") {
  const DiscreteMeasure mu({{0.1, 0.25}, {-3.0, 1.0 / 3.0}, {7.5, -2.0}});
  const nlohmann::json j = mu;
  CHECK(j.dump() == nlohmann::json::parse(j.dump()).dump());
  CHECK(j[0][0] == -3.0);
  const auto back = j.get<DiscreteMeasure>();
  CHECK(back == mu);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"a": 1})").get<DiscreteMeasure>(), Error);
  CHECK_THROWS_AS(nlohmann::json::parse(R"([[1, 2, 3]])").get<DiscreteMeasure>(), Error);
  // Unsorted input with duplicates is normalized on load.
  const auto merged = nlohmann::json::parse("[[1, 0.5], [0, 1], [1, 0.5]]").get<DiscreteMeasure>();
  CHECK(merged == DiscreteMeasure({{0.0, 1.0}, {1.0, 1.0}}));
}
