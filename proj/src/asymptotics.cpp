#include "weylscope/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "weylscope/parallel.hpp"

namespace weylscope {

namespace {

void check_x0(const SignedMeasure& m, double x0) {
  if (!(x0 > 0.0) || !(x0 < m.domain_end())) throw DomainError("x0 must lie in (0, b)");
}

struct ExpansionInputs {
  Complex k, e, i1, i2;
  double chi;
};

ExpansionInputs expansion_inputs(const SignedMeasure& m, const SpectralParameter& z, double x) {
  check_x0(m, x);
  const Complex k = z.k();
  return {k, std::exp(-2.0 * k * x), integrate_exponential(m, 2.0 * k, 0.0, 0.0, x),
          integrate_exponential(m, -2.0 * k, x, 0.0, x), cdf(m, x)};
}

// Expansions without the E_j terms, normalized.
FundamentalValues expansion_base(const ExpansionInputs& in) {
  const Complex k = in.k, e = in.e, i1 = in.i1, i2 = in.i2;
  const double chi = in.chi;
  return {(1.0 + e) / 2.0 + (1.0 - e) * chi / (4.0 * k) + (i1 - i2) / (4.0 * k),
          k * (1.0 - e) / 2.0 + (1.0 + e) * chi / 4.0 + (i1 + i2) / 4.0,
          (1.0 - e) / 2.0 + (1.0 + e) * chi / (4.0 * k) - (i1 + i2) / (4.0 * k),
          (1.0 + e) / 2.0 + (1.0 - e) * chi / (4.0 * k) - (i1 - i2) / (4.0 * k)};
}

double numerical_band(const SignedMeasure& m, Complex k, double tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  double tv = 0.0;
  for (const Atom& a : m.atoms()) tv += std::abs(a.weight);
  for (const DensityPiece& p : m.density()) {
    if (std::isfinite(p.to)) tv += abs_integral(p, p.from, p.to);
  }
  return 100.0 * eps * (std::abs(k) + tv) + 10.0 * tol * (1.0 + tv) * std::exp(tv / std::abs(k));
}

}  // namespace

std::array<double, 4> error_limit_constants(const SignedMeasure& m, double x) {
  check_x0(m, x);
  const double origin = atom_at(m, 0.0);
  StieltjesOptions opts;
  const Complex plus = stieltjes_integrate(m, [&](double y) { return cdf(m, y) + origin; }, 0.0, x, opts);
  const Complex minus = stieltjes_integrate(m, [&](double y) { return cdf(m, y) - origin; }, 0.0, x, opts);
  // The open interval (0, x) drops the atom at the origin, where chi(0) = 0.
  const double l12 = (plus.real() - origin * origin) / 8.0;
  const double l34 = (minus.real() + origin * origin) / 8.0;
  return {l12, l12, l34, l34};
}

AsymptoticExpansion expansion_terms(const SignedMeasure& m, const SpectralParameter& z, double x0) {
  check_x0(m, x0);
  AsymptoticExpansion out;
  out.spectral = z;
  out.x0 = x0;
  out.leading = -z.k();
  out.i1 = integrate_exponential(m, 2.0 * z.k(), 0.0, 0.0, x0);
  out.second_order = second_order_correction(m, z, x0);
  out.e_limits = error_limit_constants(m, x0);
  return out;
}

Complex first_order_m(const SignedMeasure& m, const SpectralParameter& z, double x0) {
  check_x0(m, x0);
  const Complex k = z.k();
  return -k - integrate_exponential(m, 2.0 * k, 0.0, 0.0, x0);
}

Complex second_order_correction(const SignedMeasure& m, const SpectralParameter& z, double x0) {
  check_x0(m, x0);
  const Complex k = z.k();
  auto inner = [&](double y) -> Complex {
    if (y <= 0.0) return 0.0;
    return integrate_exponential(m, 2.0 * k, 0.0, 0.0, y);
  };
  StieltjesOptions opts;
  opts.max_panel = std::min(0.05, 0.25 / std::abs(k));
  opts.nodes = 12;
  const Complex outer = stieltjes_integrate(
      m, [&](double y) { return (1.0 - std::exp(-2.0 * k * (x0 - y))) * inner(y); }, 0.0, x0, opts);
  return -outer / (2.0 * k);
}

Complex second_order_m(const SignedMeasure& m, const SpectralParameter& z, double x0) {
  return first_order_m(m, z, x0) + second_order_correction(m, z, x0);
}

FundamentalValues lemma_expansions_normalized(const SignedMeasure& m, const SpectralParameter& z, double x) {
  const ExpansionInputs in = expansion_inputs(m, z, x);
  const auto lim = error_limit_constants(m, x);
  FundamentalValues v = expansion_base(in);
  const Complex k = in.k;
  v.c += lim[0] / (k * k);
  v.c_prime += lim[1] / k;
  v.s += lim[2] / (k * k);
  v.s_prime += lim[3] / (k * k);
  return v;
}

FundamentalValues lemma_expansions(const SignedMeasure& m, const SpectralParameter& z, double x) {
  return denormalize(lemma_expansions_normalized(m, z, x), z.k(), x);
}

Complex extract_error_function(const FundamentalSystem& fs, double x, int which) {
  if (which < 1 || which > 4) throw ArgumentError("error function index must be 1..4");
  const std::size_t i = fs.index_of(x);
  const ExpansionInputs in = expansion_inputs(fs.measure, fs.spectral, fs.grid[i]);
  const FundamentalValues base = expansion_base(in);
  const Complex k = in.k;
  switch (which) {
    case 1:
      return k * k * (fs.c_norm(i) - base.c);
    case 2:
      return k * (fs.c_prime_norm(i) - base.c_prime);
    case 3:
      return k * k * (fs.s_norm(i) - base.s);
    default:
      return k * k * (fs.s_prime_norm(i) - base.s_prime);
  }
}

Complex extract_error_function(const SignedMeasure& m, const SpectralParameter& z, double x, int which,
                               const SolveOptions& options) {
  const FundamentalSystem fs = solve_fundamental(m, z, x, options);
  return extract_error_function(fs, x, which);
}

TruthValue m_truth(const SignedMeasure& m, const SpectralParameter& z, const TruthOptions& options) {
  TruthValue truth;
  const Complex k = z.k();
  if (m.is_atomic() && !std::isfinite(m.domain_end())) {
    truth.remainder = exact_m_remainder(m, z);
    truth.value = truth.remainder - k;
    truth.band = numerical_band(m, k, 0.0);
    truth.exact = true;
    return truth;
  }
  const double support = m.support_end();
  const bool compact = support > 0.0 && support < m.domain_end();
  const double x = compact ? support : options.x_truncate;
  SolveOptions solve = options.solve;
  solve.probes.push_back(x);
  const FundamentalSystem fs = solve_fundamental(m, z, x, solve);
  const MEstimate est = m_truncated(fs, x);
  truth.value = est.value;
  truth.remainder = est.remainder;
  // Beyond a compact support u = e^{-kx} exactly, so the quotient is the
  // Weyl function up to solver error.
  truth.exact = compact && !std::isfinite(m.domain_end());
  truth.band = truth.exact ? numerical_band(m, k, solve.tol) : est.error_radius + numerical_band(m, k, solve.tol);
  return truth;
}

Ray Ray::log_spaced(double theta, double r_min, double r_max, int points_per_decade) {
  if (!(theta > 0.0 && theta < M_PI)) throw ArgumentError("ray angle must lie in (0, pi)");
  if (!(r_min > 0.0 && r_min < r_max)) throw ArgumentError("ray needs 0 < r_min < r_max");
  if (points_per_decade < 1) throw ArgumentError("points_per_decade must be >= 1");
  Ray ray;
  ray.theta = theta;
  const double decades = std::log10(r_max / r_min);
  const int steps = static_cast<int>(std::floor(decades * points_per_decade + 1e-9));
  for (int i = 0; i <= steps; ++i) ray.radii.push_back(r_min * std::pow(10.0, static_cast<double>(i) / points_per_decade));
  if (ray.radii.back() < r_max * (1.0 - 1e-12)) ray.radii.push_back(r_max);
  return ray;
}

std::vector<SweepRow> residual_sweep(const SignedMeasure& m, double x0, const Ray& ray, ExpansionOrder order,
                                     const TruthOptions& truth_options, unsigned jobs) {
  check_x0(m, x0);
  std::vector<double> radii = ray.radii;
  std::sort(radii.begin(), radii.end());
  return parallel_map(radii.size(), jobs, [&](std::size_t i) {
    const SpectralParameter z = SpectralParameter::on_ray(radii[i], ray.theta);
    const Complex k = z.k();
    const TruthValue truth = m_truth(m, z, truth_options);
    Complex asym_remainder = -integrate_exponential(m, 2.0 * k, 0.0, 0.0, x0);
    if (order == ExpansionOrder::Second) asym_remainder += second_order_correction(m, z, x0);
    SweepRow row;
    row.radius = radii[i];
    row.theta = ray.theta;
    row.m_truth = truth.value;
    row.m_asymptotic = asym_remainder - k;
    row.residual = std::abs(truth.remainder - asym_remainder);
    const double scale = std::sqrt(std::abs(z.z()));
    row.scaled_residual = scale * row.residual;
    row.scaled_band = scale * truth.band;
    row.inconclusive = truth.band > row.residual;
    return row;
  });
}

bool decreasing_from(const std::vector<SweepRow>& rows, double from_radius) {
  const SweepRow* prev = nullptr;
  for (const SweepRow& row : rows) {
    if (row.radius < from_radius) continue;
    if (prev && row.scaled_residual > prev->scaled_residual && row.scaled_residual > row.scaled_band) return false;
    prev = &row;
  }
  return true;
}

}  // namespace weylscope
