#pragma once

#include "weylscope/fundamental.hpp"
#include "weylscope/measure.hpp"

namespace weylscope {

/// Weyl disk at truncation point x0: the m-values whose solution
/// c + m s satisfies a real boundary condition at x0.
struct WeylDisk {
  SpectralParameter spectral{Complex(0.0, 1.0)};
  double x0 = 0.0;
  Complex center;
  double radius = 0.0;
  /// log(radius), finite even when radius underflows.
  double log_radius = 0.0;

  bool contains(Complex m, double relative_slack = 0.0) const {
    return std::abs(m - center) <= radius * (1.0 + relative_slack);
  }
};

struct MEstimate {
  SpectralParameter spectral{Complex(0.0, 1.0)};
  double x0 = 0.0;
  Complex value;
  /// m(z) + sqrt(-z), computed without cancellation.
  Complex remainder;
  double error_radius = 0.0;
};

/// Center -W(c, s*)/W(s, s*) and radius 1/|W(s, s*)| at grid point x0 > 0.
/// s* is the conjugate of the stored s (the coefficients are real).
WeylDisk weyl_disk(const FundamentalSystem& fs, double x0);

/// m(z) ~ -(k c + c')/(s' + k s) at x0 in the normalized form
/// -(k + int c~ d chi)/(1 + k^{-1} int s~ d chi); the true m lies within
/// 2 r(z, x0). Requires Im z > 0.
MEstimate m_truncated(const FundamentalSystem& fs, double x0);

/// Same quotient from the raw c, c', s, s' values (overflows for large Im z).
Complex m_truncated_raw(const FundamentalSystem& fs, double x0);

/// Half-line Weyl function for a purely atomic, compactly supported measure
/// on [0, inf): start from u = e^{-kx} beyond the last atom and propagate
/// m + k backward through free intervals and jumps to the left limit at 0.
Complex exact_m_compact(const SignedMeasure& m, const SpectralParameter& z);

/// m(z) + sqrt(-z) for the same problem, accurate when it is small.
Complex exact_m_remainder(const SignedMeasure& m, const SpectralParameter& z);

/// Weyl function of the problem restricted to (t, b) with a Dirichlet
/// condition at t, estimated with truncation length x0.
MEstimate m_shifted(const SignedMeasure& m, double t, const SpectralParameter& z, double x0,
                    const SolveOptions& options = {});

}  // namespace weylscope
