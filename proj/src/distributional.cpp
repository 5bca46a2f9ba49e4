#include "weylscope/distributional.hpp"

#include <cmath>

#include "weylscope/parallel.hpp"
#include "weylscope/quadrature.hpp"

namespace weylscope {

double TestFunction::operator()(double t) const {
  const double u = (t - center) / width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return height * std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double TestFunction::derivative(double t) const {
  const double u = (t - center) / width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double g = 1.0 - u * u;
  return (*this)(t) * (-2.0 * u / (g * g)) / width;
}

TestFunction bump(double center, double width, double height, double domain_lo, double domain_hi) {
  if (!(width > 0.0)) throw ArgumentError("bump width must be positive");
  if (!(center - width > domain_lo) || !(center + width < domain_hi)) {
    throw DomainError("bump support must lie inside the open domain");
  }
  TestFunction phi{center, width, height, 0.0};
  phi.integral = integrate_composite(phi, phi.lo(), phi.hi(), 64, gauss_legendre_rule(20));
  return phi;
}

namespace {

std::vector<double> panel_edges(const SignedMeasure& m, double lo, double hi, double max_panel) {
  std::vector<double> cuts{lo};
  for (double b : m.breakpoints(lo, hi)) cuts.push_back(b);
  cuts.push_back(hi);
  std::vector<double> edges{lo};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int panels = std::max(1, static_cast<int>(std::ceil((cuts[i + 1] - cuts[i]) / max_panel)));
    for (int p = 1; p <= panels; ++p) {
      edges.push_back(p == panels ? cuts[i + 1] : cuts[i] + (cuts[i + 1] - cuts[i]) * p / panels);
    }
  }
  return edges;
}

}  // namespace

LhsValue lhs_integral(const SignedMeasure& m, const TestFunction& phi, const SpectralParameter& z,
                      const DistributionalOptions& options) {
  if (!z.upper_half_plane()) throw DomainError("lhs_integral needs Im z > 0");
  if (options.quad_points < 1) throw ArgumentError("quad_points must be >= 1");
  if (!(phi.lo() > 0.0) || !(phi.hi() < m.domain_end())) throw DomainError("test function support escapes (0, b)");
  const Complex k = z.k();
  const double max_panel = std::min(options.max_panel, 0.25 / std::abs(k));
  const std::vector<double> edges = panel_edges(m, phi.lo(), phi.hi(), max_panel);
  const auto& rule = gauss_legendre_rule(options.quad_points);

  struct Node {
    double t;
    double weight;
  };
  std::vector<Node> nodes;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    for (int i = 0; i < rule.size(); ++i) nodes.push_back({mid + half * rule.nodes(i), half * rule.weights(i)});
  }

  double x0 = options.x0;
  if (!(x0 > 0.0)) {
    const double support = m.support_end();
    x0 = std::max(0.25, std::max(support - phi.lo(), phi.hi() - phi.lo()));
    if (std::isfinite(m.domain_end())) x0 = std::min(x0, 0.999 * (m.domain_end() - phi.hi()));
  }

  const auto remainders = parallel_map(nodes.size(), options.jobs, [&](std::size_t i) {
    try {
      return m_shifted(m, nodes[i].t, z, x0, options.solve).remainder;
    } catch (const std::exception& e) {
      throw EvaluationError("m(z, t) failed at quadrature node " + std::to_string(i) + ": " + e.what());
    }
  });

  LhsValue out;
  out.nodes = nodes.size();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double w = nodes[i].weight * phi(nodes[i].t);
    out.remainder += w * remainders[i];
    out.phi_quadrature += w;
  }
  out.value = -k * out.phi_quadrature + out.remainder;
  return out;
}

RhsValue rhs_prediction(const SignedMeasure& m, const TestFunction& phi, const SpectralParameter& z) {
  const Complex k = z.k();
  const double lo = std::max(0.0, phi.lo());
  const double hi = std::min(m.domain_end(), phi.hi());
  StieltjesOptions fine;
  fine.max_panel = phi.width / 32.0;
  fine.nodes = 20;
  StieltjesOptions coarse = fine;
  coarse.max_panel = phi.width / 16.0;
  RhsValue out;
  out.phi_chi = stieltjes_integrate(m, phi, lo, hi, fine);
  out.quadrature_error = std::abs(out.phi_chi - stieltjes_integrate(m, phi, lo, hi, coarse));
  out.value = -k * phi.integral - out.phi_chi / (2.0 * k);
  return out;
}

double distributional_residual(const LhsValue& lhs, const RhsValue& rhs, const TestFunction& phi,
                               const SpectralParameter& z) {
  const Complex k = z.k();
  return std::abs(-k * (lhs.phi_quadrature - phi.integral) + lhs.remainder + rhs.phi_chi / (2.0 * k));
}

std::vector<DistributionalRow> distributional_residual_sweep(const SignedMeasure& m, const TestFunction& phi,
                                                             const Ray& ray, const DistributionalOptions& options) {
  std::vector<double> radii = ray.radii;
  std::sort(radii.begin(), radii.end());
  std::vector<DistributionalRow> rows;
  for (double radius : radii) {
    const SpectralParameter z = SpectralParameter::on_ray(radius, ray.theta);
    const LhsValue lhs = lhs_integral(m, phi, z, options);
    const RhsValue rhs = rhs_prediction(m, phi, z);
    DistributionalRow row;
    row.radius = radius;
    row.theta = ray.theta;
    row.lhs = lhs.value;
    row.rhs = rhs.value;
    row.residual = distributional_residual(lhs, rhs, phi, z);
    row.scaled_residual = std::sqrt(radius) * row.residual;
    row.phi_center = phi.center;
    row.phi_width = phi.width;
    rows.push_back(row);
  }
  return rows;
}

Complex window_integral(const TestFunction& phi, double s, double eps, const SpectralParameter& z) {
  const Complex k = z.k();
  const int panels = std::max(1, static_cast<int>(std::ceil(eps * std::abs(k) * 4.0)));
  return integrate_composite([&](double t) { return phi(t) * std::exp(2.0 * k * (t - s)); }, s - eps, s, panels,
                             gauss_legendre_rule(16));
}

}  // namespace weylscope
