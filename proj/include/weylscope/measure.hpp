#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "weylscope/errors.hpp"
#include "weylscope/quadrature.hpp"
#include "weylscope/spectral.hpp"

namespace weylscope {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Atom {
  double position;
  double weight;
};

/// Polynomial density c0 + c1 y + c2 y^2 + c3 y^3 on [from, to), written in
/// the absolute coordinate y.
struct DensityPiece {
  double from;
  double to;
  std::array<double, 4> coeffs{};

  double operator()(double y) const;
  /// d^order/dy^order of the polynomial (order 0..3).
  double derivative(int order, double y) const;
  /// A primitive with P(0) = 0.
  double primitive(double y) const;
  bool vanishes() const;
};

/// Locally finite signed Borel measure on [0, b): finitely many atoms plus a
/// piecewise cubic density. Immutable after construction.
class SignedMeasure {
 public:
  SignedMeasure() = default;
  /// Throws ArgumentError unless atom positions are strictly increasing in
  /// [0, b) with nonzero weights and density pieces are ordered,
  /// non-overlapping and inside [0, b].
  SignedMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> density,
                double domain_end = kInfinity);

  static SignedMeasure zero(double domain_end = kInfinity) { return SignedMeasure({}, {}, domain_end); }
  static SignedMeasure delta(double position, double weight, double domain_end = kInfinity) {
    return SignedMeasure({{position, weight}}, {}, domain_end);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& density() const { return density_; }
  double domain_end() const { return domain_end_; }

  /// True when every density piece vanishes identically.
  bool is_atomic() const;
  /// Smallest L with |chi|([L, b)) = 0; 0 for the zero measure.
  double support_end() const;
  /// Density value at y (the piece with from <= y < to), 0 in gaps.
  double density_at(double y) const;
  /// The piece whose half-open interval contains y, or nullptr.
  const DensityPiece* piece_at(double y) const;
  /// Atom positions and density breakpoints strictly inside (lo, hi), sorted.
  std::vector<double> breakpoints(double lo, double hi) const;

  /// Sum of two measures on the same domain.
  SignedMeasure operator+(const SignedMeasure& other) const;
  SignedMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> density_;
  double domain_end_ = kInfinity;
};

struct TotalVariationBudget {
  double value = 0.0;
};

/// chi([0, x)) with chi(0) = 0; left-continuous in x.
double cdf(const SignedMeasure& m, double x);

/// chi({x}).
double atom_at(const SignedMeasure& m, double x);

/// |chi|([0, x0)), 0 < x0 <= b.
TotalVariationBudget total_variation(const SignedMeasure& m, double x0);

/// Integral of |p| over [a, b] for a cubic piece, splitting at sign changes.
double abs_integral(const DensityPiece& piece, double a, double b);

struct StieltjesOptions {
  double max_panel = 0.05;
  int nodes = 16;
};

namespace detail {
void check_interval(const SignedMeasure& m, double lo, double hi);
std::vector<double> split_points(const SignedMeasure& m, double a, double b);
inline bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// int_{[lo, hi)} f d chi: atoms summed exactly (lo included, hi excluded),
/// the density part by composite Gauss-Legendre split at every atom and
/// density breakpoint. f may return double or Complex.
template <typename F>
Complex stieltjes_integrate(const SignedMeasure& m, F&& f, double lo, double hi,
                            const StieltjesOptions& options = {}) {
  detail::check_interval(m, lo, hi);
  Complex sum = 0.0;
  for (const Atom& atom : m.atoms()) {
    if (atom.position < lo) continue;
    if (atom.position >= hi) break;
    const Complex value = Complex(f(atom.position));
    if (!detail::finite(value)) {
      throw EvaluationError("integrand is not finite at atom " + std::to_string(atom.position));
    }
    sum += atom.weight * value;
  }
  const auto& rule = gauss_legendre_rule(options.nodes);
  for (const DensityPiece& piece : m.density()) {
    const double a = std::max(lo, piece.from);
    const double b = std::min(hi, piece.to);
    if (!(a < b) || piece.vanishes()) continue;
    if (!std::isfinite(b)) throw DomainError("density integral over an unbounded interval");
    const std::vector<double> cuts = detail::split_points(m, a, b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = cuts[i + 1] - cuts[i];
      const int panels = std::max(1, static_cast<int>(std::ceil(len / options.max_panel)));
      const Complex part = integrate_composite(
          [&](double y) { return Complex(f(y)) * piece(y); }, cuts[i], cuts[i + 1], panels, rule);
      if (!detail::finite(part)) throw EvaluationError("integrand is not finite on the density support");
      sum += part;
    }
  }
  return sum;
}

/// int_{[lo, hi)} exp(-rate (y - anchor)) d chi(y), with the density part in
/// closed form. Intended for |exp(-rate (y - anchor))| <= 1 on [lo, hi).
Complex integrate_exponential(const SignedMeasure& m, Complex rate, double anchor, double lo, double hi);

/// chi_t(B) = chi(t + B) on [0, b - t); an atom at t moves to the origin.
SignedMeasure shift_restrict(const SignedMeasure& m, double t);

}  // namespace weylscope
