#pragma once

#include <complex>

namespace weylscope {

using Complex = std::complex<double>;

/// Square root with branch cut along (-inf, 0) and Re >= 0.
Complex principal_sqrt(Complex w);

/// Complex energy z together with k = sqrt(-z) on the standard branch.
///
/// For Im z > 0 the branch gives Re k > 0 and Im k < 0, so e^{-kx} is the
/// decaying exponential and the normalized solutions e^{-kx} c, k e^{-kx} s
/// stay bounded.
class SpectralParameter {
 public:
  explicit SpectralParameter(Complex z);

  Complex z() const { return z_; }
  Complex k() const { return k_; }
  bool upper_half_plane() const { return z_.imag() > 0.0; }

  /// z = R e^{i theta}
  static SpectralParameter on_ray(double radius, double theta);

 private:
  Complex z_;
  Complex k_;
};

}  // namespace weylscope
