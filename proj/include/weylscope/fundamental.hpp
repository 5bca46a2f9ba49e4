#pragma once

#include <Eigen/Dense>
#include <vector>

#include "weylscope/measure.hpp"
#include "weylscope/spectral.hpp"

namespace weylscope {

/// Value and left-continuous derivative of a solution at one point.
struct SolutionPair {
  Complex value;
  Complex derivative;
};

/// W_x(f, g) = f g' - f' g.
inline Complex wronskian(const SolutionPair& f, const SolutionPair& g) {
  return f.value * g.derivative - f.derivative * g.value;
}

/// c, c', s, s' at one point.
struct FundamentalValues {
  Complex c;
  Complex c_prime;
  Complex s;
  Complex s_prime;
};

struct SolveOptions {
  double tol = 1e-12;
  int max_iterations = 200;
  /// Collocation points per panel (Chebyshev-Lobatto, endpoints shared).
  int nodes_per_panel = 16;
  /// Upper bound on the panel width; the solver also enforces 1/(4|k|).
  double max_panel = 0.05;
  /// Extra points that must appear on the grid.
  std::vector<double> probes;
};

/// Fundamental system c, s of tau u = z u on a grid [0, x_max].
///
/// Values are stored in the normalized variables
///   c~ = e^{-kx} c,  c^' = e^{-kx} c',  s~ = k e^{-kx} s,  s^' = e^{-kx} s',
/// which stay bounded for Im z -> infinity. Derivatives are the
/// left-continuous representatives; right limits at atoms come from the jump
/// condition f'(p+) = f'(p) + chi({p}) f(p).
struct FundamentalSystem {
  SpectralParameter spectral{Complex(0.0, 1.0)};
  SignedMeasure measure;
  std::vector<double> grid;
  Eigen::VectorXcd c_norm;
  Eigen::VectorXcd c_prime_norm;
  Eigen::VectorXcd s_norm;
  Eigen::VectorXcd s_prime_norm;
  /// int_{[0, x)} c~ d chi and int_{[0, x)} s~ d chi.
  Eigen::VectorXcd c_moment;
  Eigen::VectorXcd s_moment;
  /// Composite Clenshaw-Curtis weights: sum_i w_i f(x_i) ~ int_0^{x_max} f dx.
  Eigen::VectorXd weights;
  double last_residual = 0.0;
  int max_iterations_used = 0;

  std::size_t size() const { return grid.size(); }
  /// Index of a grid point; throws DomainError if x is not on the grid.
  std::size_t index_of(double x) const;

  /// Raw values; may overflow for very large Re(k) x.
  FundamentalValues values(std::size_t i) const;
  SolutionPair c_pair(std::size_t i) const;
  SolutionPair s_pair(std::size_t i) const;
  /// Right limits c'(x+), s'(x+).
  Complex c_prime_right(std::size_t i) const;
  Complex s_prime_right(std::size_t i) const;

  /// W_x(c, s) computed from the normalized values.
  Complex wronskian_cs(std::size_t i) const;
};

/// Solve the Volterra equations for c, s on [0, x_max] by Picard iteration
/// on the normalized equations, marching panel by panel. Atoms enter as exact
/// Stieltjes sums at panel boundaries; density pieces through spectral
/// integration of the collocated integrand.
FundamentalSystem solve_fundamental(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                    const SolveOptions& options = {});

FundamentalSystem solve_fundamental(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                    double tol);

/// Exact propagation of (f, f') for a purely atomic measure: free
/// propagators between atoms, jump matrices [[1, 0], [w, 1]] at each atom in
/// [0, x). Returns normalized values (same scaling as FundamentalSystem).
FundamentalValues transfer_matrix_oracle_normalized(const SignedMeasure& m, const SpectralParameter& z, double x);

/// Raw c, c', s, s' from the transfer-matrix oracle.
FundamentalValues transfer_matrix_oracle(const SignedMeasure& m, const SpectralParameter& z, double x);

/// Convert normalized values at x to raw values.
FundamentalValues denormalize(const FundamentalValues& normalized, Complex k, double x);

}  // namespace weylscope
