#include "weylscope/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace weylscope {

const QuadratureRule<double>& gauss_legendre_rule(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule<double>>(gauss_legendre<double>(n));
  return *slot;
}

Eigen::VectorXd chebyshev_lobatto(int n) {
  Eigen::VectorXd t(n);
  for (int j = 0; j < n; ++j) {
    t(j) = 0.5 * (1.0 - std::cos(M_PI * j / (n - 1)));
  }
  t(0) = 0.0;
  t(n - 1) = 1.0;
  return t;
}

namespace {

// Barycentric evaluation of every Lagrange basis polynomial at t.
Eigen::VectorXd lagrange_basis(const Eigen::VectorXd& nodes, const Eigen::VectorXd& bary, double t) {
  const int n = static_cast<int>(nodes.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l) {
    if (t == nodes(l)) {
      out(l) = 1.0;
      return out;
    }
  }
  double denom = 0.0;
  for (int l = 0; l < n; ++l) {
    out(l) = bary(l) / (t - nodes(l));
    denom += out(l);
  }
  return out / denom;
}

}  // namespace

Eigen::MatrixXd integration_matrix(const Eigen::VectorXd& nodes) {
  const int n = static_cast<int>(nodes.size());
  Eigen::VectorXd bary(n);
  for (int l = 0; l < n; ++l) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m != l) prod *= nodes(l) - nodes(m);
    }
    bary(l) = 1.0 / prod;
  }
  // An n-point Gauss rule is exact for the degree n-1 basis polynomials.
  const auto& rule = gauss_legendre_rule(n);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double upper = nodes(j);
    if (upper == 0.0) continue;
    for (int g = 0; g < rule.size(); ++g) {
      const double t = 0.5 * upper * (rule.nodes(g) + 1.0);
      s.row(j) += 0.5 * upper * rule.weights(g) * lagrange_basis(nodes, bary, t).transpose();
    }
  }
  return s;
}

}  // namespace weylscope
