#include <cmath>

#include "doctest.h"
#include "fareopt/quadrature.hpp"

using namespace fareopt;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("polynomial and transcendental integrals") {
  auto sq = [](double x) { return x * x; };
  CHECK(quad::integrate(sq, 0.0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  auto e = [](double x) { return std::exp(x); };
  const double exact = std::exp(3.0) - std::exp(-1.0);
  CHECK(quad::integrate(e, -1.0, 3.0, 1e-10).value ==
        doctest::Approx(exact).epsilon(1e-12));

  CHECK(quad::integrate(sq, 2.0, 2.0).value == 0.0);
}

TEST_CASE("split keeps a discontinuity off panel interiors") {
  auto jump = [](double x) { return x < 0.3 ? 1.0 : 5.0; };
  const double breaks[] = {0.3};
  auto r = quad::integrate_split(jump, 0.0, 1.0, breaks, 1e-12);
  CHECK(r.value == doctest::Approx(0.3 + 5.0 * 0.7).epsilon(1e-13));
  CHECK(r.converged);
}

TEST_CASE("oscillatory integrand converges to tight tolerance") {
  auto f = [](double x) { return std::sin(10.0 * x) * std::exp(-x); };
  // antiderivative of exp(-x) sin(10x): -exp(-x)(sin(10x) + 10 cos(10x))/101
  auto F = [](double x) {
    return -std::exp(-x) * (std::sin(10.0 * x) + 10.0 * std::cos(10.0 * x)) / 101.0;
  };
  auto r = quad::integrate(f, 0.0, 6.0, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(F(6.0) - F(0.0)).epsilon(1e-11));
}

TEST_SUITE_END();
