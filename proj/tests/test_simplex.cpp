#include <doctest.h>

#include <stdexcept>

#include "peakon/simplex.hpp"

using namespace peakon::lp;

TEST_CASE("textbook maximization") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
  Problem p(3, 2);
  p.a(0, 0) = 1;
  p.a(1, 1) = 2;
  p.a(2, 0) = 3;
  p.a(2, 1) = 2;
  p.b = {4, 12, 18};
  p.c = {3, 5};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
}

TEST_CASE("unbounded and trivial problems") {
  Problem p(1, 2);
  p.a(0, 0) = 1;
  p.a(0, 1) = -1;
  p.b = {1};
  p.c = {0, 1};
  CHECK(solve(p).status == Status::Unbounded);

  Problem q(1, 1);
  q.a(0, 0) = 1;
  q.b = {5};
  q.c = {-1};
  const Solution s = solve(q);
  CHECK(s.status == Status::Optimal);
  CHECK(s.objective == 0.0);
  CHECK(s.pivots == 0);
}

TEST_CASE("degenerate problem terminates") {
  // Beale's cycling example: Dantzig's rule cycles, Bland's rule must not.
  Problem p(3, 4);
  const double A[3][4] = {{0.25, -8, -1, 9}, {0.5, -12, -0.5, 3}, {0, 0, 1, 0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) p.a(i, j) = A[i][j];
  }
  p.b = {0, 0, 1};
  p.c = {0.75, -20, 0.5, -6};
  const Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(1.25));
}

TEST_CASE("iteration limit and argument checks") {
  Problem p(2, 2);
  p.a(0, 0) = 1;
  p.a(1, 1) = 1;
  p.b = {1, 1};
  p.c = {1, 1};
  CHECK(solve(p, Options{1e-11, 1}).status == Status::IterationLimit);
  p.b = {-1, 1};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p.b = {1};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}
