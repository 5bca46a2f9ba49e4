#include <random>

#include "doctest.h"
#include "weylscope/weyl.hpp"

using namespace weylscope;

namespace {

SignedMeasure random_atomic(std::mt19937& rng) {
  std::uniform_real_distribution<double> pos(0.0, 0.95), weight(-3.0, 3.0);
  const int count = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<double> positions;
  for (int i = 0; i < count; ++i) positions.push_back(pos(rng));
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  std::vector<Atom> atoms;
  for (double p : positions) atoms.push_back({p, weight(rng) + 0.01});
  return SignedMeasure(std::move(atoms), {});
}

}  // namespace

TEST_CASE("free disk collapses onto -sqrt(-z)") {
  const SpectralParameter z(Complex(0.0, 1.0));
  const FundamentalSystem fs = solve_fundamental(SignedMeasure::zero(), z, 20.0);
  const WeylDisk near = weyl_disk(fs, 2.0);
  const WeylDisk far = weyl_disk(fs, 20.0);
  CHECK(far.radius < near.radius);
  CHECK(far.radius < 1e-10);
  CHECK(std::abs(far.center + z.k()) < 1e-10);
  CHECK(far.log_radius == doctest::Approx(std::log(far.radius)));

  const MEstimate est = m_truncated(fs, 2.0);
  CHECK(std::abs(est.value + z.k()) < 1e-15);
  CHECK(est.error_radius == doctest::Approx(2.0 * near.radius));
}

TEST_CASE("m_truncated reproduces the delta example") {
  for (double alpha : {-3.0, 0.5, 2.0}) {
    const SpectralParameter z(Complex(0.0, 1e4));
    const FundamentalSystem fs = solve_fundamental(SignedMeasure::delta(0.0, alpha), z, 1.0);
    const MEstimate est = m_truncated(fs, 1.0);
    CHECK(std::abs(est.value - (-z.k() - alpha)) <= est.error_radius + 1e-12 * std::abs(z.k()));
    CHECK(std::abs(exact_m_compact(SignedMeasure::delta(0.0, alpha), z) - (-z.k() - alpha)) <= 1e-12 * std::abs(z.k()));
  }
}

TEST_CASE("m_truncated agrees with backward propagation") {
  const SignedMeasure m({{0.25, 1.0}, {0.6, -2.0}}, {});
  const SpectralParameter z(Complex(0.0, 100.0));
  const FundamentalSystem fs = solve_fundamental(m, z, 1.0);
  const MEstimate est = m_truncated(fs, 1.0);
  const Complex exact = exact_m_compact(m, z);
  CHECK(std::abs(est.value - exact) <= est.error_radius + 1e-12 * std::abs(exact));
  CHECK(std::abs(est.remainder - exact_m_remainder(m, z)) <= est.error_radius + 1e-12);
  // Raw and normalized quotients coincide while the raw form does not overflow.
  CHECK(std::abs(m_truncated_raw(fs, 1.0) - est.value) < 1e-9 * std::abs(exact));
}

TEST_CASE("disk nesting example") {
  const SignedMeasure m = SignedMeasure::delta(0.3, 2.0);
  SolveOptions options;
  options.probes = {0.5};
  const FundamentalSystem fs = solve_fundamental(m, SpectralParameter(Complex(0.0, 4.0)), 1.0, options);
  const WeylDisk d0 = weyl_disk(fs, 0.5), d1 = weyl_disk(fs, 1.0);
  CHECK(std::abs(d1.center - d0.center) <= (d0.radius - d1.radius) * (1.0 + 1e-8));
}

TEST_CASE("weyl errors") {
  const FundamentalSystem real_z = solve_fundamental(SignedMeasure::delta(0.2, 1.0), SpectralParameter(Complex(-2.0, 0.0)), 1.0);
  CHECK_THROWS_AS(weyl_disk(real_z, 1.0), DegenerateDiskError);
  const FundamentalSystem fs = solve_fundamental(SignedMeasure::zero(), SpectralParameter(Complex(0.0, 1.0)), 1.0);
  CHECK_THROWS_AS(weyl_disk(fs, 0.0), DomainError);
  CHECK_THROWS_AS(exact_m_compact(SignedMeasure({}, {{0.0, 1.0, {1, 0, 0, 0}}}), SpectralParameter(Complex(0.0, 1.0))),
                  UnsupportedMeasureError);
  CHECK_THROWS_AS(exact_m_compact(SignedMeasure::delta(0.2, 1.0), SpectralParameter(Complex(0.0, -1.0))), DomainError);
}

TEST_CASE("m_shifted") {
  const SpectralParameter z(Complex(0.0, 9.0));
  const SignedMeasure m = SignedMeasure::delta(0.4, 1.5);
  CHECK(std::abs(m_shifted(m, 0.6, z, 1.0).value + z.k()) < 1e-15);
  CHECK(std::abs(m_shifted(m, 0.4, z, 1.0).value - (-z.k() - 1.5)) < 1e-13);

  const SignedMeasure density({}, {{0.0, 1.0, {0.8, 0.0, 0.0, 0.0}}});
  const SignedMeasure half({}, {{0.0, 0.5, {0.8, 0.0, 0.0, 0.0}}});
  const MEstimate shifted = m_shifted(density, 0.5, z, 0.5);
  const MEstimate direct = m_truncated(solve_fundamental(half, z, 0.5), 0.5);
  CHECK(std::abs(shifted.value - direct.value) < 1e-13);
}

TEST_CASE("property: nesting, membership, Herglotz and consistency") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const SignedMeasure m = random_atomic(rng);
    for (Complex zz : {Complex(0.0, 1.0), Complex(-5.0, 2.0), Complex(3.0, 30.0)}) {
      const SpectralParameter z(zz);
      SolveOptions options;
      options.probes = {0.5, 1.5};
      const FundamentalSystem fs = solve_fundamental(m, z, 2.0, options);
      const WeylDisk d0 = weyl_disk(fs, 0.5), d1 = weyl_disk(fs, 1.5), d2 = weyl_disk(fs, 2.0);
      CHECK(std::abs(d1.center - d0.center) + d1.radius <= d0.radius * (1.0 + 1e-8));
      CHECK(std::abs(d2.center - d1.center) + d2.radius <= d1.radius * (1.0 + 1e-8));
      const MEstimate est = m_truncated(fs, 1.5);
      CHECK(d1.contains(est.value, 1e-8));
      const Complex exact = exact_m_compact(m, z);
      CHECK(exact.imag() > 0.0);
      CHECK(std::abs(est.value - exact) <= est.error_radius * (1.0 + 1e-8) + 1e-12 * std::abs(exact));
    }
  }
}

TEST_CASE("property: log radius decays with slope -2 Re k") {
  for (Complex zz : {Complex(0.0, 100.0), Complex(0.0, 400.0)}) {
    const SpectralParameter z(zz);
    SolveOptions options;
    options.probes = {1.0, 2.0};
    const FundamentalSystem fs = solve_fundamental(SignedMeasure({{0.2, 1.0}, {0.5, -0.7}}, {}), z, 2.0, options);
    const double slope = (weyl_disk(fs, 2.0).log_radius - weyl_disk(fs, 1.0).log_radius) / 1.0;
    CHECK(std::abs(slope / (-2.0 * z.k().real()) - 1.0) < 0.05);
  }
}
