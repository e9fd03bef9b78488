// SPDX-License-Identifier: MIT
#include "ratemig/quadrature.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "ratemig/errors.hpp"

using namespace ratemig;

namespace {

double integrate_monomial(const QuadratureRule& rule, int k) {
  double sum = 0;
  for (int q = 0; q < rule.size(); ++q)
    sum += rule.weights[q] * std::pow(rule.points[q], k);
  return sum;
}

double exact_monomial(int k) { return k % 2 ? 0.0 : 2.0 / (k + 1); }

}  // namespace

TEST_CASE("point counts outside [1, 10] are rejected") {
  CHECK_THROWS_AS(gauss_rule(0), InvalidParameterError);
  CHECK_THROWS_AS(gauss_rule(-3), InvalidParameterError);
  CHECK_THROWS_AS(gauss_rule(11), InvalidParameterError);
  CHECK_NOTHROW(gauss_rule(1));
  CHECK_NOTHROW(gauss_rule(10));
}

TEST_CASE("nodes and weights match the tabulated Gauss-Legendre values") {
  const double tol = 5e-16;
  {
    const auto r = gauss_rule(1);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r.points[0]) <= tol);
    CHECK(std::abs(r.weights[0] - 2.0) <= tol);
  }
  {
    const auto r = gauss_rule(2);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r.points[0] + 0.5773502691896257) <= tol);  // -1/sqrt(3)
    CHECK(std::abs(r.points[1] - 0.5773502691896257) <= tol);
    CHECK(std::abs(r.weights[0] - 1.0) <= tol);
    CHECK(std::abs(r.weights[1] - 1.0) <= tol);
  }
  {
    const auto r = gauss_rule(3);
    REQUIRE(r.size() == 3);
    CHECK(std::abs(r.points[0] + 0.7745966692414834) <= tol);  // -sqrt(3/5)
    CHECK(std::abs(r.points[1]) <= tol);
    CHECK(std::abs(r.points[2] - 0.7745966692414834) <= tol);
    CHECK(std::abs(r.weights[0] - 5.0 / 9.0) <= 2e-15);
    CHECK(std::abs(r.weights[1] - 8.0 / 9.0) <= 2e-15);
  }
  {
    const auto r = gauss_rule(4);
    REQUIRE(r.size() == 4);
    CHECK(std::abs(r.points[0] + 0.8611363115940526) <= 4e-15);
    CHECK(std::abs(r.points[1] + 0.33998104358485626) <= 4e-15);
    CHECK(std::abs(r.weights[0] - 0.3478548451374537) <= 4e-15);
    CHECK(std::abs(r.weights[1] - 0.6521451548625462) <= 4e-15);
  }
  {
    const auto r = gauss_rule(5);
    REQUIRE(r.size() == 5);
    CHECK(std::abs(r.points[0] + 0.906179845938664) <= 4e-15);
    CHECK(std::abs(r.points[1] + 0.5384693101056831) <= 4e-15);
    CHECK(std::abs(r.points[2]) <= 4e-15);
    CHECK(std::abs(r.weights[0] - 0.23692688505618942) <= 4e-15);
    CHECK(std::abs(r.weights[1] - 0.4786286704993662) <= 4e-15);
    CHECK(std::abs(r.weights[2] - 0.568888888888889) <= 4e-15);
  }
}

TEST_CASE("rules are symmetric with positive weights summing to 2") {
  for (int n = 1; n <= 10; ++n) {
    const auto r = gauss_rule(n);
    REQUIRE(r.size() == n);
    CHECK(r.exact_degree() == 2 * n - 1);
    double wsum = 0;
    for (int q = 0; q < n; ++q) {
      CHECK(r.weights[q] > 0);
      CHECK(std::abs(r.points[q]) < 1.0);
      wsum += r.weights[q];
      CHECK(std::abs(r.points[q] + r.points[n - 1 - q]) <= 1e-15);
      CHECK(std::abs(r.weights[q] - r.weights[n - 1 - q]) <= 1e-15);
      if (q > 0) CHECK(r.points[q] > r.points[q - 1]);
    }
    CHECK(std::abs(wsum - 2.0) <= 1e-14);
  }
}

TEST_CASE("degree 2n-1 exactness is achieved and sharp") {
  for (int n = 1; n <= 10; ++n) {
    const auto r = gauss_rule(n);
    for (int k = 0; k <= 2 * n - 1; ++k)
      CHECK(std::abs(integrate_monomial(r, k) - exact_monomial(k)) <= 5e-15);
    // x^{2n} is the first even monomial the rule misses, by a visible margin.
    CHECK(std::abs(integrate_monomial(r, 2 * n) - exact_monomial(2 * n)) > 1e-6);
  }
}
