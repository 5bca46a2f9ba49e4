#include <random>

#include "doctest.h"
#include "weylscope/asymptotics.hpp"

using namespace weylscope;

namespace {

// (1/8) int_{(0,x)} (chi(y) +/- chi({0})) d chi(y) for atomic measures, as a
// plain sum over atoms.
std::array<double, 2> limit_by_sum(const SignedMeasure& m, double x) {
  double origin = 0.0;
  for (const Atom& a : m.atoms())
    if (a.position == 0.0) origin = a.weight;
  double plus = 0.0, minus = 0.0, running = 0.0;
  for (const Atom& a : m.atoms()) {
    if (a.position >= x) break;
    if (a.position > 0.0) {
      plus += a.weight * (running + origin);
      minus += a.weight * (running - origin);
    }
    running += a.weight;
  }
  return {plus / 8.0, minus / 8.0};
}

}  // namespace

TEST_CASE("first order examples") {
  const SpectralParameter z(Complex(0.0, 1e4));
  CHECK(first_order_m(SignedMeasure::zero(), z, 1.0) == -z.k());
  CHECK(std::abs(first_order_m(SignedMeasure::delta(0.0, 2.0), z, 1.0) - (-z.k() - 2.0)) < 1e-12);
  const double q0 = 1.3, x0 = 0.9;
  const SignedMeasure flat({}, {{0.0, 2.0, {q0, 0.0, 0.0, 0.0}}});
  const Complex k = z.k();
  CHECK(std::abs(first_order_m(flat, z, x0) - (-k - q0 * (1.0 - std::exp(-2.0 * k * x0)) / (2.0 * k))) < 1e-13);
}

TEST_CASE("second order examples") {
  const SpectralParameter z(Complex(1.0, 40.0));
  const Complex k = z.k();
  CHECK(second_order_correction(SignedMeasure::delta(0.0, 1.7), z, 1.0) == Complex(0.0));
  CHECK(second_order_m(SignedMeasure::zero(), z, 1.0) == -k);
  const double w1 = 1.5, w2 = -0.8, p1 = 0.2, p2 = 0.6, x0 = 1.0;
  const SignedMeasure two({{p1, w1}, {p2, w2}}, {});
  const Complex expected = -(w1 * w2 / (2.0 * k)) * (1.0 - std::exp(-2.0 * k * (x0 - p2))) * std::exp(-2.0 * k * p1);
  CHECK(std::abs(second_order_correction(two, z, x0) - expected) < 1e-15);
  CHECK(std::abs(second_order_m(two, z, x0) - first_order_m(two, z, x0) - expected) < 1e-14);
}

TEST_CASE("error limit constants against a direct sum") {
  CHECK(error_limit_constants(SignedMeasure({{0.25, 1.0}, {0.75, 1.0}}, {}), 1.0)[0] == doctest::Approx(0.125));
  CHECK(error_limit_constants(SignedMeasure({{0.0, 2.0}, {0.5, 1.0}}, {}), 1.0)[0] == doctest::Approx(0.5));
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> pos(0.0, 1.0), weight(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Atom> atoms;
    if (trial % 2) atoms.push_back({0.0, weight(rng)});
    std::vector<double> ps{pos(rng), pos(rng), pos(rng)};
    std::sort(ps.begin(), ps.end());
    for (double p : ps) atoms.push_back({p, weight(rng)});
    const SignedMeasure m(std::move(atoms), {});
    const auto oracle = limit_by_sum(m, 0.8);
    const auto got = error_limit_constants(m, 0.8);
    CHECK(got[0] == doctest::Approx(oracle[0]).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(oracle[0]).epsilon(1e-12));
    CHECK(got[2] == doctest::Approx(oracle[1]).epsilon(1e-12));
    CHECK(got[3] == doctest::Approx(oracle[1]).epsilon(1e-12));
  }
  // Density: int_0^1 y dy = 1/2 for chi = Lebesgue on [0, 1).
  const auto lebesgue = error_limit_constants(SignedMeasure({}, {{0.0, 1.0, {1.0, 0, 0, 0}}}), 1.0);
  CHECK(lebesgue[0] == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("solution expansions in the free case") {
  const SpectralParameter z(Complex(-1.0, 0.5));
  const Complex k = z.k();
  const FundamentalValues v = lemma_expansions(SignedMeasure::zero(), z, 0.7);
  CHECK(std::abs(v.c - std::cosh(k * 0.7)) < 1e-14);
  CHECK(std::abs(v.c_prime - k * std::sinh(k * 0.7)) < 1e-14);
  CHECK(std::abs(v.s - std::sinh(k * 0.7) / k) < 1e-14);
  CHECK(std::abs(v.s_prime - std::cosh(k * 0.7)) < 1e-14);
  for (int j = 1; j <= 4; ++j)
    CHECK(std::abs(extract_error_function(SignedMeasure::zero(), SpectralParameter(Complex(0.0, 50.0)), 1.0, j)) <
          1e-9);
}

TEST_CASE("solution expansions are exact for a single atom") {
  for (double p : {0.0, 0.3}) {
    const SignedMeasure m = SignedMeasure::delta(p, 1.5);
    for (double r : {1e2, 1e4, 1e6}) {
      const SpectralParameter z(Complex(0.0, r));
      const FundamentalValues expansion = lemma_expansions_normalized(m, z, 1.0);
      const FundamentalValues oracle = transfer_matrix_oracle_normalized(m, z, 1.0);
      CHECK(std::abs(expansion.c - oracle.c) * r < 1e-10);
      CHECK(std::abs(expansion.c_prime - oracle.c_prime) * std::sqrt(r) < 1e-10);
      CHECK(std::abs(expansion.s - oracle.s) * r < 1e-10);
      CHECK(std::abs(expansion.s_prime - oracle.s_prime) * r < 1e-10);
    }
  }
}

TEST_CASE("error functions approach their limits") {
  const SignedMeasure pair({{0.25, 1.0}, {0.75, 1.0}}, {});
  CHECK(std::abs(extract_error_function(pair, SpectralParameter(Complex(0.0, 1e6)), 1.0, 1) - 0.125) < 0.05 * 0.125);

  const SignedMeasure mixed({{0.25, 1.0}}, {{0.4, 0.9, {1.0, 0.5, 0.0, 0.0}}});
  const auto limits = error_limit_constants(mixed, 1.0);
  for (int j : {1, 4}) {
    double previous = kInfinity;
    for (double r : {1e2, 1e4, 1e6}) {
      const Complex e = extract_error_function(mixed, SpectralParameter(Complex(0.0, r)), 1.0, j);
      const double gap = std::abs(e - limits[j - 1]);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 1e-3);
  }
  CHECK_THROWS_AS(extract_error_function(pair, SpectralParameter(Complex(0.0, 1.0)), 1.0, 5), ArgumentError);
}

TEST_CASE("error functions stay proportional to the total variation") {
  // Calibrated on this suite: |E_j| stays below TV^2.
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> pos(0.0, 1.0), weight(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> ps{pos(rng), pos(rng)};
    std::sort(ps.begin(), ps.end());
    const SignedMeasure m({{ps[0], weight(rng)}, {ps[1], weight(rng)}}, {});
    const double tv = total_variation(m, 1.0).value;
    for (double r : {1e3, 1e5}) {
      for (int j = 1; j <= 4; ++j) {
        const Complex e = extract_error_function(m, SpectralParameter(Complex(0.0, r)), 1.0, j);
        CHECK(std::abs(e) <= 1.0 * tv * tv + 1e-9);
      }
    }
  }
}

TEST_CASE("truth values") {
  const SpectralParameter z(Complex(0.0, 100.0));
  const TruthValue atomic = m_truth(SignedMeasure::delta(0.3, 1.0), z);
  CHECK(atomic.exact);
  CHECK(std::abs(atomic.value - exact_m_compact(SignedMeasure::delta(0.3, 1.0), z)) == 0.0);
  const TruthValue dens = m_truth(SignedMeasure({}, {{0.0, 1.0, {1.0, 0, 0, 0}}}), z);
  CHECK(dens.band < 1e-8);
  // Support reaching the right endpoint: truncated estimate with its disk band.
  const TruthValue cut = m_truth(SignedMeasure({}, {{0.0, 2.0, {1.0, 0, 0, 0}}}, 2.0), z);
  CHECK(!cut.exact);
  CHECK(cut.band > 0.0);
  CHECK(cut.band < 1e-4);
  CHECK(std::abs(dens.value - (dens.remainder - z.k())) < 1e-12);
}

TEST_CASE("ray construction") {
  const Ray ray = Ray::log_spaced(1.5707963267948966, 100.0, 1e6, 1);
  REQUIRE(ray.radii.size() == 5);
  CHECK(ray.radii.front() == 100.0);
  CHECK(ray.radii.back() == doctest::Approx(1e6));
  CHECK(Ray::log_spaced(0.3, 1.0, 10.0, 4).radii.size() == 5);
  CHECK_THROWS_AS(Ray::log_spaced(0.0, 1.0, 10.0, 4), ArgumentError);
  CHECK_THROWS_AS(Ray::log_spaced(1.0, 10.0, 1.0, 4), ArgumentError);
  CHECK_THROWS_AS(Ray::log_spaced(1.0, 1.0, 10.0, 0), ArgumentError);
}

TEST_CASE("residual sweeps") {
  const Ray ray = Ray::log_spaced(1.5707963267948966, 100.0, 1e6, 1);
  for (const SweepRow& row : residual_sweep(SignedMeasure::zero(), 1.0, ray)) CHECK(row.residual < 1e-9);
  for (const SweepRow& row : residual_sweep(SignedMeasure::delta(0.0, 2.0), 1.0, ray))
    CHECK(row.residual <= 1e-12 * row.radius);
  const auto rows = residual_sweep(SignedMeasure::delta(0.5, 1.0), 1.0, ray, ExpansionOrder::First, {}, 3);
  CHECK(decreasing_from(rows, 100.0));
  const auto serial = residual_sweep(SignedMeasure::delta(0.5, 1.0), 1.0, ray);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].scaled_residual == serial[i].scaled_residual);
  // Second order: |z| residual bounded for atoms away from 0.
  const auto second = residual_sweep(SignedMeasure({{0.2, 1.0}, {0.6, -1.0}}, {}), 1.0, ray, ExpansionOrder::Second);
  for (const SweepRow& row : second) CHECK(row.residual * row.radius < 10.0);
}

TEST_CASE("property: reflection symmetry of the first-order term") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> pos(0.0, 1.0), weight(-3.0, 3.0), arg(0.1, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const SignedMeasure m({{pos(rng) * 0.5, weight(rng)}}, {{0.5, 1.0, {weight(rng), weight(rng), 0, 0}}});
    const Complex zz = std::polar(std::exp(6.0 * pos(rng)), arg(rng));
    const Complex up = first_order_m(m, SpectralParameter(zz), 1.0);
    const Complex down = first_order_m(m, SpectralParameter(std::conj(zz)), 1.0);
    CHECK(std::abs(down - std::conj(up)) <= 1e-12 * std::abs(up));
  }
}
