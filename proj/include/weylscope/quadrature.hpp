#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <type_traits>

namespace weylscope {

/// Nodes and weights of an interpolatory rule on [-1, 1].
template <typename Scalar>
struct QuadratureRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, Newton iteration on P_n from the
/// Chebyshev-like initial guess.
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = Scalar(3.14159265358979323846264338327950288L);
  const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Scalar p2 = (Scalar(2 * j - 1) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
      const Scalar dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 4 * eps) break;
    }
    // Recompute the derivative at the converged node.
    Scalar p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const Scalar p2 = (Scalar(2 * j - 1) * x * p1 - Scalar(j - 1) * p0) / Scalar(j);
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? Scalar(1) : Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes((n - 1) / 2) = 0;
  return rule;
}

/// Shared double-precision Gauss-Legendre rules (thread-safe, built once).
const QuadratureRule<double>& gauss_legendre_rule(int n);

/// Composite rule: `panels` equal panels on [lo, hi], each mapped from
/// `rule`. The integrand may return real or complex values.
template <typename F, typename Rule>
auto integrate_composite(F&& f, double lo, double hi, int panels, const Rule& rule) {
  using Value = std::decay_t<decltype(f(lo))>;
  Value sum{};
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + h * p;
    const double b = p + 1 == panels ? hi : lo + h * (p + 1);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Value panel{};
    for (int i = 0; i < rule.size(); ++i) {
      panel += rule.weights(i) * f(mid + half * rule.nodes(i));
    }
    sum += half * panel;
  }
  return sum;
}

/// Chebyshev-Lobatto points mapped to [0, 1], increasing, endpoints included.
Eigen::VectorXd chebyshev_lobatto(int n);

/// Spectral integration matrix on [0, 1]: S(j, l) = int_0^{nodes(j)} L_l(t) dt
/// for the Lagrange basis L_l of `nodes`. S * f integrates the interpolant of
/// f from 0 to every node; the last row is the Clenshaw-Curtis weight vector
/// when nodes are Chebyshev-Lobatto.
Eigen::MatrixXd integration_matrix(const Eigen::VectorXd& nodes);

}  // namespace weylscope
