#include "weylscope/weyl.hpp"

#include <cmath>

namespace weylscope {

namespace {

struct ScaledWronskians {
  Complex c_sbar;  // W(c, s*) e^{-2 Re(k) x}
  Complex s_sbar;  // W(s, s*) e^{-2 Re(k) x}
};

ScaledWronskians disk_wronskians(const FundamentalSystem& fs, std::size_t i) {
  const Complex k = fs.spectral.k();
  const Complex s = fs.s_norm(i) / k;  // e^{-kx} s
  const Complex sp = fs.s_prime_norm(i);
  const Complex c = fs.c_norm(i);
  const Complex cp = fs.c_prime_norm(i);
  return {c * std::conj(sp) - cp * std::conj(s), s * std::conj(sp) - sp * std::conj(s)};
}

}  // namespace

WeylDisk weyl_disk(const FundamentalSystem& fs, double x0) {
  if (!(x0 > 0.0)) throw DomainError("Weyl disk needs x0 > 0");
  const std::size_t i = fs.index_of(x0);
  const ScaledWronskians w = disk_wronskians(fs, i);
  if (w.s_sbar == 0.0) throw DegenerateDiskError("W(s, s*) vanishes; z must be non-real");
  WeylDisk disk;
  disk.spectral = fs.spectral;
  disk.x0 = fs.grid[i];
  disk.center = -w.c_sbar / w.s_sbar;
  disk.log_radius = -2.0 * fs.spectral.k().real() * disk.x0 - std::log(std::abs(w.s_sbar));
  disk.radius = std::exp(disk.log_radius);
  return disk;
}

MEstimate m_truncated(const FundamentalSystem& fs, double x0) {
  if (!fs.spectral.upper_half_plane()) throw DomainError("m_truncated needs Im z > 0");
  const WeylDisk disk = weyl_disk(fs, x0);
  const std::size_t i = fs.index_of(x0);
  const Complex k = fs.spectral.k();
  const Complex c_int = fs.c_moment(i);
  const Complex s_int = fs.s_moment(i);
  const Complex denom = 1.0 + s_int / k;
  if (std::abs(denom) == 0.0) throw DegenerateDiskError("vanishing denominator in the truncated quotient");
  MEstimate est;
  est.spectral = fs.spectral;
  est.x0 = disk.x0;
  est.value = -(k + c_int) / denom;
  est.remainder = -(c_int - s_int) / denom;
  est.error_radius = 2.0 * disk.radius;
  return est;
}

Complex m_truncated_raw(const FundamentalSystem& fs, double x0) {
  const FundamentalValues v = fs.values(fs.index_of(x0));
  const Complex k = fs.spectral.k();
  return -(v.c * k + v.c_prime) / (v.s_prime + k * v.s);
}

Complex exact_m_remainder(const SignedMeasure& m, const SpectralParameter& z) {
  if (!m.is_atomic()) throw UnsupportedMeasureError("exact_m_compact needs a purely atomic measure");
  if (!z.upper_half_plane()) throw DomainError("exact_m_compact needs Im z > 0");
  if (std::isfinite(m.domain_end())) throw UnsupportedMeasureError("exact_m_compact needs the half-line b = inf");
  const Complex k = z.k();
  // delta = u'/u + k; delta = 0 on the free tail where u = e^{-kx}.
  Complex delta = 0.0;
  const auto& atoms = m.atoms();
  for (std::size_t idx = atoms.size(); idx-- > 0;) {
    delta -= atoms[idx].weight;  // u'(p) = u'(p+) - w u(p)
    const double left = idx == 0 ? 0.0 : atoms[idx - 1].position;
    const double d = atoms[idx].position - left;
    if (d > 0.0) {
      const Complex e = std::exp(-2.0 * k * d);
      const Complex denom = 1.0 - delta * (1.0 - e) / (2.0 * k);
      if (denom == 0.0) throw PoleError("u(z, x) vanished during backward propagation");
      delta = e * delta / denom;
    }
  }
  return delta;
}

Complex exact_m_compact(const SignedMeasure& m, const SpectralParameter& z) {
  return exact_m_remainder(m, z) - z.k();
}

MEstimate m_shifted(const SignedMeasure& m, double t, const SpectralParameter& z, double x0,
                    const SolveOptions& options) {
  if (!(t >= 0.0) || !(t + x0 < m.domain_end())) throw DomainError("m_shifted needs 0 <= t and t + x0 < b");
  const SignedMeasure shifted = shift_restrict(m, t);
  if (shifted.is_atomic() && !std::isfinite(shifted.domain_end())) {
    MEstimate est;
    est.spectral = z;
    est.x0 = x0;
    est.remainder = exact_m_remainder(shifted, z);
    est.value = est.remainder - z.k();
    est.error_radius = 0.0;
    return est;
  }
  SolveOptions opts = options;
  opts.probes.push_back(x0);
  const FundamentalSystem fs = solve_fundamental(shifted, z, x0, opts);
  return m_truncated(fs, x0);
}

}  // namespace weylscope
