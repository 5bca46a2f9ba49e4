#include "weylscope/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "weylscope/weyl.hpp"

namespace weylscope {

double wronskian_defect(const FundamentalSystem& fs) {
  const Complex k = fs.spectral.k();
  double worst = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Complex a = fs.c_norm(i) * fs.s_prime_norm(i);
    const Complex b = fs.c_prime_norm(i) * fs.s_norm(i) / k;
    const Complex target = std::exp(-2.0 * k * fs.grid[i]);
    worst = std::max(worst, std::abs(a - b - target) / std::max(std::abs(a) + std::abs(b), 1e-300));
  }
  return worst;
}

double wronskian_raw_defect(const FundamentalSystem& fs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) worst = std::max(worst, std::abs(fs.wronskian_cs(i) - 1.0));
  return worst;
}

std::vector<InvariantResult> check_invariants(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                              const SolveOptions& options) {
  std::vector<InvariantResult> out;
  SolveOptions opts = options;
  opts.probes.push_back(0.5 * x_max);
  const FundamentalSystem fs = solve_fundamental(m, z, x_max, opts);

  out.push_back({"wronskian", false, wronskian_defect(fs), 1e-10});

  double jump = 0.0;
  for (const Atom& a : m.atoms()) {
    if (a.position >= x_max) break;
    const std::size_t i = fs.index_of(a.position);
    const FundamentalValues v = fs.values(i);
    const double scale = std::max(1.0, std::abs(v.c_prime) + std::abs(a.weight * v.c));
    jump = std::max(jump, std::abs(fs.c_prime_right(i) - v.c_prime - a.weight * v.c) / scale);
  }
  out.push_back({"jump_condition", false, jump, 1e-12});

  if (z.upper_half_plane()) {
    const WeylDisk inner = weyl_disk(fs, 0.5 * x_max);
    const WeylDisk outer = weyl_disk(fs, x_max);
    const double nest = std::abs(outer.center - inner.center) + outer.radius - inner.radius * (1.0 + 1e-8);
    out.push_back({"disk_nesting", false, nest / std::max(inner.radius, 1e-300), 0.0});
    const MEstimate est = m_truncated(fs, x_max);
    const double member = std::abs(est.value - outer.center) - outer.radius * (1.0 + 1e-8);
    out.push_back({"disk_membership", false, member / std::max(outer.radius, 1e-300), 0.0});
  }

  if (m.is_atomic()) {
    double worst = 0.0;
    std::vector<double> points;
    for (const Atom& a : m.atoms()) {
      if (a.position < x_max) points.push_back(a.position);
    }
    points.push_back(x_max);
    for (double x : points) {
      const std::size_t i = fs.index_of(x);
      const FundamentalValues oracle = transfer_matrix_oracle_normalized(m, z, x);
      const Complex got[4] = {fs.c_norm(i), fs.c_prime_norm(i), fs.s_norm(i), fs.s_prime_norm(i)};
      const Complex want[4] = {oracle.c, oracle.c_prime, oracle.s, oracle.s_prime};
      for (int j = 0; j < 4; ++j) {
        worst = std::max(worst, std::abs(got[j] - want[j]) / std::max(std::abs(want[j]), 1.0));
      }
    }
    out.push_back({"oracle_agreement", false, worst, 1e-8});
    if (z.upper_half_plane() && !std::isfinite(m.domain_end())) {
      out.push_back({"herglotz", false, -exact_m_compact(m, z).imag(), 0.0});
    }
  }

  for (InvariantResult& r : out) {
    r.passed = r.name == "herglotz" ? r.worst < r.threshold : r.worst <= r.threshold;
  }
  return out;
}

}  // namespace weylscope
