#include "doctest.h"
#include "weylscope/quadrature.hpp"

using namespace weylscope;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 5, 12, 20}) {
    const auto rule = gauss_legendre<double>(n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int degree = 0; degree < 2 * n; ++degree) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule.weights(i) * std::pow(rule.nodes(i), degree);
      const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  // Same rule in extended precision agrees to double rounding.
  const auto ld = gauss_legendre<long double>(10);
  const auto& d = gauss_legendre_rule(10);
  CHECK(std::abs(static_cast<double>(ld.nodes(3)) - d.nodes(3)) < 1e-15);
}

TEST_CASE("spectral integration matrix") {
  const Eigen::VectorXd t = chebyshev_lobatto(9);
  CHECK(t(0) == 0.0);
  CHECK(t(8) == 1.0);
  const Eigen::MatrixXd s = integration_matrix(t);
  // int_0^{t_j} y^5 dy = t_j^6 / 6
  const Eigen::VectorXd f = t.array().pow(5);
  const Eigen::VectorXd got = s * f;
  for (int j = 0; j < 9; ++j) CHECK(got(j) == doctest::Approx(std::pow(t(j), 6) / 6.0).epsilon(1e-14));
  CHECK(s.row(0).norm() == 0.0);
  CHECK(s.row(8).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("composite integration of a smooth complex integrand") {
  const auto& rule = gauss_legendre_rule(12);
  const std::complex<double> k(5.0, -5.0);
  const auto value = integrate_composite([&](double y) { return std::exp(-2.0 * k * y); }, 0.0, 1.0, 8, rule);
  const auto exact = (1.0 - std::exp(-2.0 * k)) / (2.0 * k);
  CHECK(std::abs(value - exact) < 1e-14);
}
