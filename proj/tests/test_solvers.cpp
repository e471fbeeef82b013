#include <doctest.h>

#include <cmath>
#include <vector>

#include "misrep/lp.hpp"
#include "misrep/simplex_minimize.hpp"

using namespace misrep;

TEST_CASE("lp solves a textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), 36
  lp::Problem p(2);
  p.objective = {-3.0, -5.0};
  p.add({1.0, 0.0}, lp::Sense::less_equal, 4.0);
  p.add({0.0, 2.0}, lp::Sense::less_equal, 12.0);
  p.add({3.0, 2.0}, lp::Sense::less_equal, 18.0);
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.objective == doctest::Approx(-36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
}

TEST_CASE("lp handles equalities, >= rows and free variables") {
  // min x + y with x free, x + y >= 1, x - y = 3, y >= 0 -> x = 3, y = 0
  lp::Problem p(2);
  p.objective = {1.0, 1.0};
  p.free[0] = true;
  p.add({1.0, 1.0}, lp::Sense::greater_equal, 1.0);
  p.add({1.0, -1.0}, lp::Sense::equal, 3.0);
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.x[0] == doctest::Approx(3.0));
  CHECK(s.x[1] == doctest::Approx(0.0).epsilon(1e-12));

  // A free variable taking a negative value.
  lp::Problem n(1);
  n.objective = {1.0};
  n.free[0] = true;
  n.add({1.0}, lp::Sense::greater_equal, -2.5);
  const auto sn = lp::solve(n);
  REQUIRE(sn.status == lp::Status::optimal);
  CHECK(sn.x[0] == doctest::Approx(-2.5));
}

TEST_CASE("lp reports infeasible and unbounded programs") {
  lp::Problem inf(1);
  inf.add({1.0}, lp::Sense::less_equal, -1.0);
  CHECK(lp::solve(inf).status == lp::Status::infeasible);

  lp::Problem unb(2);
  unb.objective = {-1.0, 0.0};
  unb.add({1.0, -1.0}, lp::Sense::less_equal, 1.0);
  CHECK(lp::solve(unb).status == lp::Status::unbounded);
}

TEST_CASE("lp copes with degenerate redundant equalities") {
  lp::Problem p(3);
  p.objective = {1.0, 2.0, 3.0};
  p.add({1.0, 1.0, 1.0}, lp::Sense::equal, 1.0);
  p.add({2.0, 2.0, 2.0}, lp::Sense::equal, 2.0);
  p.add({1.0, 0.0, 0.0}, lp::Sense::less_equal, 0.25);
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.objective == doctest::Approx(0.25 + 2.0 * 0.75));
}

TEST_CASE("frank-wolfe minimizes a quadratic on the simplex") {
  // ||x - c||^2 with c inside the simplex: minimum 0 at c.
  const std::vector<double> c{0.2, 0.5, 0.3};
  SimplexObjective f{
      [&](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
        return s;
      },
      [&](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < 3; ++i) g[i] = 2.0 * (x[i] - c[i]);
      }};
  const auto r = minimize_on_simplex(f, 3);
  CHECK(r.converged);
  CHECK(r.value <= 1e-10);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.argmin[i] - c[i]) <= 1e-5);
  CHECK(r.gap <= 1e-10);
}

TEST_CASE("frank-wolfe finds a vertex optimum") {
  // Linear objective: the best vertex is optimal immediately.
  SimplexObjective f{[](std::span<const double> x) { return 3.0 * x[0] + 1.0 * x[1] + 2.0 * x[2]; },
                     [](std::span<const double>, std::span<double> g) {
                       g[0] = 3.0;
                       g[1] = 1.0;
                       g[2] = 2.0;
                     }};
  const auto r = minimize_on_simplex(f, 3);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.argmin[1] == doctest::Approx(1.0));
}

TEST_CASE("frank-wolfe reports the iteration cap") {
  const std::vector<double> c{0.2, 0.5, 0.3};
  SimplexObjective f{
      [&](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
        return s;
      },
      [&](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < 3; ++i) g[i] = 2.0 * (x[i] - c[i]);
      }};
  SimplexMinimizeOptions opt;
  opt.max_iterations = 1;
  opt.gap_tolerance = 0.0;
  const auto r = minimize_on_simplex(f, 3, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 1);
  CHECK(r.gap > 0.0);
}
