#include "weylscope/spectral.hpp"

#include <cmath>

#include "weylscope/errors.hpp"

namespace weylscope {

Complex principal_sqrt(Complex w) {
  // std::sqrt already uses the cut along the negative real axis; a signed
  // zero imaginary part selects the side of the cut.
  return std::sqrt(w);
}

SpectralParameter::SpectralParameter(Complex z) : z_(z), k_(principal_sqrt(-z)) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ArgumentError("spectral parameter must be finite");
  }
}

SpectralParameter SpectralParameter::on_ray(double radius, double theta) {
  return SpectralParameter(std::polar(radius, theta));
}

}  // namespace weylscope
