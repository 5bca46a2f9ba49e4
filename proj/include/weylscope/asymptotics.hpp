#pragma once

#include <array>
#include <vector>

#include "weylscope/fundamental.hpp"
#include "weylscope/measure.hpp"
#include "weylscope/weyl.hpp"

namespace weylscope {

/// Limits of the error functions E_1..E_4 as Im z -> infinity:
///   E_1, E_2 -> (1/8) int_{(0,x)} (chi(y) + chi({0})) d chi(y)
///   E_3, E_4 -> (1/8) int_{(0,x)} (chi(y) - chi({0})) d chi(y)
std::array<double, 4> error_limit_constants(const SignedMeasure& m, double x);

struct AsymptoticExpansion {
  SpectralParameter spectral{Complex(0.0, 1.0)};
  double x0 = 0.0;
  Complex leading;       // -k
  Complex i1;            // int_{[0,x0)} e^{-2ky} d chi(y)
  Complex second_order;  // correction added by second_order_m
  std::array<double, 4> e_limits{};
};

AsymptoticExpansion expansion_terms(const SignedMeasure& m, const SpectralParameter& z, double x0);

/// -sqrt(-z) - int_{[0,x0)} e^{-2 sqrt(-z) y} d chi(y).
Complex first_order_m(const SignedMeasure& m, const SpectralParameter& z, double x0);

/// The next correction
///   -(1/2k) int_{[0,x0)} (1 - e^{-2k(x0-y)}) int_{[0,y)} e^{-2kr} d chi(r) d chi(y).
Complex second_order_correction(const SignedMeasure& m, const SpectralParameter& z, double x0);

Complex second_order_m(const SignedMeasure& m, const SpectralParameter& z, double x0);

/// Expansions of c, c', s, s' at x with each E_j replaced by its limit.
/// Normalized like FundamentalSystem (e^{-kx} c, e^{-kx} c', k e^{-kx} s,
/// e^{-kx} s').
FundamentalValues lemma_expansions_normalized(const SignedMeasure& m, const SpectralParameter& z, double x);

/// Raw expansions (cosh/sinh scale).
FundamentalValues lemma_expansions(const SignedMeasure& m, const SpectralParameter& z, double x);

/// E_j(z, x), j = 1..4, solved from the expansion and the computed solution
/// at grid point x of fs.
Complex extract_error_function(const FundamentalSystem& fs, double x, int which);

/// Convenience: solve the fundamental system on [0, x] first.
Complex extract_error_function(const SignedMeasure& m, const SpectralParameter& z, double x, int which,
                               const SolveOptions& options = {});

/// Reference value of m(z) for residual measurements.
struct TruthValue {
  Complex value;
  Complex remainder;  // value + k
  /// Uncertainty of value; residuals below it are inconclusive.
  double band = 0.0;
  bool exact = false;
};

struct TruthOptions {
  SolveOptions solve;
  /// Truncation point used when the measure is not compactly supported.
  double x_truncate = 1.0;
};

/// exact_m_compact for atomic half-line measures; otherwise m_truncated at
/// the end of the support (exact up to the solver) or at x_truncate with the
/// 2 r(z, x0) band.
TruthValue m_truth(const SignedMeasure& m, const SpectralParameter& z, const TruthOptions& options = {});

struct Ray {
  double theta = 1.5707963267948966;
  std::vector<double> radii;

  /// radii r_min * 10^{i / points_per_decade} up to r_max.
  static Ray log_spaced(double theta, double r_min, double r_max, int points_per_decade);
};

struct SweepRow {
  double radius = 0.0;
  double theta = 0.0;
  Complex m_truth;
  Complex m_asymptotic;
  double residual = 0.0;
  double scaled_residual = 0.0;
  /// sqrt|z| times the truth band.
  double scaled_band = 0.0;
  bool inconclusive = false;
};

enum class ExpansionOrder { First, Second };

/// Rows sorted by radius; jobs <= 1 runs serially.
std::vector<SweepRow> residual_sweep(const SignedMeasure& m, double x0, const Ray& ray,
                                     ExpansionOrder order = ExpansionOrder::First,
                                     const TruthOptions& truth = {}, unsigned jobs = 1);

/// True if scaled residuals do not increase (beyond the truth band) over
/// consecutive rows with radius >= from_radius.
bool decreasing_from(const std::vector<SweepRow>& rows, double from_radius);

}  // namespace weylscope
