#pragma once

#include <vector>

#include "weylscope/asymptotics.hpp"
#include "weylscope/measure.hpp"
#include "weylscope/weyl.hpp"

namespace weylscope {

/// Smooth bump phi(t) = height * exp(1 - 1/(1 - u^2)), u = (t - center)/width,
/// supported on [center - width, center + width].
struct TestFunction {
  double center = 0.0;
  double width = 1.0;
  double height = 1.0;
  /// int phi dt
  double integral = 0.0;

  double lo() const { return center - width; }
  double hi() const { return center + width; }
  double operator()(double t) const;
  double derivative(double t) const;
};

/// Throws DomainError unless [center - width, center + width] lies inside
/// the open interval (domain_lo, domain_hi).
TestFunction bump(double center, double width, double height, double domain_lo = 0.0,
                  double domain_hi = kInfinity);

struct DistributionalOptions {
  /// Gauss-Legendre points per panel.
  int quad_points = 12;
  /// Panel width cap; the quadrature also enforces 1/(4|k|).
  double max_panel = 0.01;
  /// Truncation length for m(z, t); <= 0 picks one covering the support.
  double x0 = 0.0;
  unsigned jobs = 1;
  SolveOptions solve;
};

struct LhsValue {
  /// int m(z, t) phi(t) dt
  Complex value;
  /// int (m(z, t) + sqrt(-z)) phi(t) dt
  Complex remainder;
  /// int phi dt by the same quadrature
  double phi_quadrature = 0.0;
  std::size_t nodes = 0;
};

/// Composite Gauss-Legendre quadrature of t -> m(z, t) phi(t), panels split
/// at atoms and density breakpoints (nodes never land on an atom).
LhsValue lhs_integral(const SignedMeasure& m, const TestFunction& phi, const SpectralParameter& z,
                      const DistributionalOptions& options = {});

struct RhsValue {
  Complex value;
  /// int phi d chi
  Complex phi_chi;
  /// Difference to the same integral on a twice coarser panelization.
  double quadrature_error = 0.0;
};

/// -sqrt(-z) Phi_0 - (1 / (2 sqrt(-z))) int phi d chi.
RhsValue rhs_prediction(const SignedMeasure& m, const TestFunction& phi, const SpectralParameter& z);

struct DistributionalRow {
  double radius = 0.0;
  double theta = 0.0;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double scaled_residual = 0.0;
  double phi_center = 0.0;
  double phi_width = 0.0;
};

/// |lhs - rhs| assembled from the remainders to avoid cancelling -k Phi_0.
double distributional_residual(const LhsValue& lhs, const RhsValue& rhs, const TestFunction& phi,
                               const SpectralParameter& z);

std::vector<DistributionalRow> distributional_residual_sweep(const SignedMeasure& m, const TestFunction& phi,
                                                             const Ray& ray,
                                                             const DistributionalOptions& options = {});

/// int_{s - eps}^{s} phi(t) e^{2k(t - s)} dt by composite Gauss-Legendre.
Complex window_integral(const TestFunction& phi, double s, double eps, const SpectralParameter& z);

}  // namespace weylscope
