#include "weylscope/fundamental.hpp"

#include <algorithm>
#include <cmath>

#include "weylscope/quadrature.hpp"

namespace weylscope {

namespace {

using Matrix2Col = Eigen::Matrix<Complex, Eigen::Dynamic, 2>;

// (1 - e^{-2k d}) / (2k), finite as k -> 0.
Complex damped_length(Complex k, double d) {
  const Complex x = 2.0 * k * d;
  if (std::abs(x) < 1e-3) return d * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
  return (1.0 - std::exp(-x)) / (2.0 * k);
}

double density_bound(const SignedMeasure& m, double x_max) {
  double bound = 0.0;
  for (const DensityPiece& p : m.density()) {
    if (p.from >= x_max) break;
    const double hi = std::min(p.to, x_max);
    for (int i = 0; i <= 32; ++i) bound = std::max(bound, std::abs(p(p.from + (hi - p.from) * i / 32.0)));
  }
  return bound;
}

}  // namespace

std::size_t FundamentalSystem::index_of(double x) const {
  auto it = std::lower_bound(grid.begin(), grid.end(), x);
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  if (it != grid.end() && std::abs(*it - x) <= slack) return static_cast<std::size_t>(it - grid.begin());
  if (it != grid.begin() && std::abs(*(it - 1) - x) <= slack) return static_cast<std::size_t>(it - grid.begin() - 1);
  throw DomainError("x = " + std::to_string(x) + " is not a grid point of the fundamental system");
}

FundamentalValues FundamentalSystem::values(std::size_t i) const {
  return denormalize({c_norm(i), c_prime_norm(i), s_norm(i), s_prime_norm(i)}, spectral.k(), grid[i]);
}

SolutionPair FundamentalSystem::c_pair(std::size_t i) const {
  const FundamentalValues v = values(i);
  return {v.c, v.c_prime};
}

SolutionPair FundamentalSystem::s_pair(std::size_t i) const {
  const FundamentalValues v = values(i);
  return {v.s, v.s_prime};
}

Complex FundamentalSystem::c_prime_right(std::size_t i) const {
  const FundamentalValues v = values(i);
  return v.c_prime + atom_at(measure, grid[i]) * v.c;
}

Complex FundamentalSystem::s_prime_right(std::size_t i) const {
  const FundamentalValues v = values(i);
  return v.s_prime + atom_at(measure, grid[i]) * v.s;
}

Complex FundamentalSystem::wronskian_cs(std::size_t i) const {
  const Complex k = spectral.k();
  const Complex scaled = c_norm(i) * s_prime_norm(i) - c_prime_norm(i) * s_norm(i) / k;
  return std::exp(2.0 * k * grid[i]) * scaled;
}

FundamentalValues denormalize(const FundamentalValues& v, Complex k, double x) {
  const Complex g = std::exp(k * x);
  return {v.c * g, v.c_prime * g, v.s * g / k, v.s_prime * g};
}

FundamentalSystem solve_fundamental(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                    double tol) {
  SolveOptions options;
  options.tol = tol;
  return solve_fundamental(m, z, x_max, options);
}

FundamentalSystem solve_fundamental(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                    const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (options.nodes_per_panel < 3) throw ArgumentError("need at least 3 nodes per panel");
  if (!(x_max > 0.0) || !(x_max < m.domain_end())) throw DomainError("x_max must lie in (0, b)");
  const Complex k = z.k();
  if (k == 0.0) throw ArgumentError("z = 0 is not supported");

  // Panel width: resolve e^{-2k(x-y)} and keep the local Picard map contractive.
  double h_max = std::min(options.max_panel, 0.25 / std::abs(k));
  const double qmax = density_bound(m, x_max);
  if (qmax > 0.0) h_max = std::min(h_max, std::sqrt(0.1 / qmax));

  std::vector<double> cuts{0.0};
  for (double b : m.breakpoints(0.0, x_max)) cuts.push_back(b);
  for (double p : options.probes) {
    if (p > 0.0 && p < x_max) cuts.push_back(p);
  }
  cuts.push_back(x_max);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int n = options.nodes_per_panel;
  const Eigen::VectorXd tau = chebyshev_lobatto(n);
  const Eigen::MatrixXd integ = integration_matrix(tau);

  std::vector<double> xs{0.0};
  std::vector<Complex> cn{1.0}, cpn{0.0}, sn{0.0}, spn{1.0}, cmom{0.0}, smom{0.0};
  std::vector<double> wts{0.0};

  Eigen::RowVector2cd acc_a = Eigen::RowVector2cd::Zero();  // int_{[0,x)} f d chi
  Eigen::RowVector2cd acc_b = Eigen::RowVector2cd::Zero();  // int_{[0,x)} e^{-2k(x-y)} f d chi
  Eigen::RowVector2cd f_start(Complex(1.0), Complex(0.0));
  std::size_t next_atom = 0;
  const auto& atoms = m.atoms();

  FundamentalSystem fs;
  Matrix2Col current(n, 2), updated(n, 2), moment_a(n, 2), moment_b(n, 2);
  Eigen::VectorXcd e_global(n), e_local(n), e_grow(n);
  Eigen::VectorXd density(n);
  Eigen::VectorXd y(n);

  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double a = cuts[seg], b = cuts[seg + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h_max)));
    for (int p = 0; p < panels; ++p) {
      const double lo = a + (b - a) * p / panels;
      const double hi = p + 1 == panels ? b : a + (b - a) * (p + 1) / panels;
      const double h = hi - lo;

      // Atom at the left end enters every integral over [lo, x), x > lo.
      while (next_atom < atoms.size() && atoms[next_atom].position < lo) ++next_atom;
      Eigen::RowVector2cd start_a = acc_a, start_b = acc_b;
      if (next_atom < atoms.size() && atoms[next_atom].position == lo) {
        start_a += atoms[next_atom].weight * f_start;
        start_b += atoms[next_atom].weight * f_start;
      }

      const DensityPiece* piece = m.piece_at(0.5 * (lo + hi));
      const bool has_density = piece != nullptr && !piece->vanishes();
      for (int j = 0; j < n; ++j) {
        y(j) = j + 1 == n ? hi : lo + h * tau(j);
        e_global(j) = std::exp(-2.0 * k * y(j));
        e_local(j) = std::exp(-2.0 * k * (y(j) - lo));
        e_grow(j) = std::exp(2.0 * k * (y(j) - lo));
        density(j) = has_density ? (*piece)(y(j)) : 0.0;
      }

      auto evaluate = [&](const Matrix2Col& f) {
        moment_a = start_a.replicate(n, 1);
        moment_b = start_b.replicate(n, 1);
        if (has_density) {
          const Matrix2Col g = density.cast<Complex>().asDiagonal() * f;
          moment_a.noalias() += h * integ.cast<Complex>() * g;
          moment_b.noalias() += h * integ.cast<Complex>() * (e_grow.asDiagonal() * g);
        }
        moment_b = e_local.asDiagonal() * moment_b;
        const Eigen::VectorXcd diff0 = (moment_a.col(0) - moment_b.col(0)) / (2.0 * k);
        const Eigen::VectorXcd diff1 = (moment_a.col(1) - moment_b.col(1)) / (2.0 * k);
        updated.col(0) = (1.0 + e_global.array()).matrix() / 2.0 + diff0;
        updated.col(1) = (1.0 - e_global.array()).matrix() / 2.0 + diff1;
      };

      current = f_start.replicate(n, 1);
      int iterations = 0;
      double change = 0.0;
      if (!has_density) {
        evaluate(current);
        current = updated;
        iterations = 1;
      } else {
        bool converged = false;
        for (iterations = 1; iterations <= options.max_iterations; ++iterations) {
          evaluate(current);
          change = (updated - current).cwiseAbs().maxCoeff();
          const double scale = std::max(1.0, updated.cwiseAbs().maxCoeff());
          current = updated;
          if (change <= options.tol * scale) {
            converged = true;
            break;
          }
        }
        if (!converged) {
          throw IterationLimitError("Picard iteration did not converge on panel [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]",
                                    change);
        }
        // Moments consistent with the accepted iterate.
        evaluate(current);
      }
      fs.last_residual = std::max(fs.last_residual, change);
      fs.max_iterations_used = std::max(fs.max_iterations_used, iterations);

      const std::size_t base = xs.size() - 1;
      for (int j = 1; j < n; ++j) {
        const Complex el = e_global(j);
        xs.push_back(y(j));
        cn.push_back(current(j, 0));
        sn.push_back(current(j, 1));
        cpn.push_back(k * (1.0 - el) / 2.0 + (moment_a(j, 0) + moment_b(j, 0)) / 2.0);
        spn.push_back((1.0 + el) / 2.0 + (moment_a(j, 1) + moment_b(j, 1)) / (2.0 * k));
        cmom.push_back(moment_a(j, 0));
        smom.push_back(moment_a(j, 1));
        wts.push_back(0.0);
      }
      for (int j = 0; j < n; ++j) wts[base + j] += h * integ(n - 1, j);

      acc_a = moment_a.row(n - 1);
      acc_b = moment_b.row(n - 1);
      f_start = current.row(n - 1);
    }
  }

  fs.spectral = z;
  fs.measure = m;
  fs.grid = std::move(xs);
  const auto to_eigen = [](const std::vector<Complex>& v) {
    return Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  fs.c_norm = to_eigen(cn);
  fs.c_prime_norm = to_eigen(cpn);
  fs.s_norm = to_eigen(sn);
  fs.s_prime_norm = to_eigen(spn);
  fs.c_moment = to_eigen(cmom);
  fs.s_moment = to_eigen(smom);
  fs.weights = Eigen::Map<const Eigen::VectorXd>(wts.data(), static_cast<Eigen::Index>(wts.size()));
  return fs;
}

FundamentalValues transfer_matrix_oracle_normalized(const SignedMeasure& m, const SpectralParameter& z, double x) {
  if (!m.is_atomic()) throw UnsupportedMeasureError("transfer-matrix oracle needs a purely atomic measure");
  if (!(x >= 0.0) || !(x < m.domain_end())) throw DomainError("x outside [0, b)");
  const Complex k = z.k();

  // Columns (c, s), rows (value, derivative), all scaled by e^{-kx}.
  Eigen::Matrix2cd state = Eigen::Matrix2cd::Identity();
  auto propagate = [&](double d) {
    if (d <= 0.0) return;
    const Complex e = std::exp(-2.0 * k * d);
    const Complex len = damped_length(k, d);
    Eigen::Matrix2cd step;
    step << (1.0 + e) / 2.0, len, k * k * len, (1.0 + e) / 2.0;
    state = step * state;
  };
  double position = 0.0;
  for (const Atom& atom : m.atoms()) {
    if (atom.position >= x) break;
    propagate(atom.position - position);
    Eigen::Matrix2cd jump;
    jump << 1.0, 0.0, atom.weight, 1.0;
    state = jump * state;
    position = atom.position;
  }
  propagate(x - position);
  return {state(0, 0), state(1, 0), k * state(0, 1), state(1, 1)};
}

FundamentalValues transfer_matrix_oracle(const SignedMeasure& m, const SpectralParameter& z, double x) {
  return denormalize(transfer_matrix_oracle_normalized(m, z, x), z.k(), x);
}

}  // namespace weylscope
