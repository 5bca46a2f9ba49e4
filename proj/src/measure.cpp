#include "weylscope/measure.hpp"

#include <algorithm>
#include <map>

namespace weylscope {

double DensityPiece::operator()(double y) const {
  return ((coeffs[3] * y + coeffs[2]) * y + coeffs[1]) * y + coeffs[0];
}

double DensityPiece::derivative(int order, double y) const {
  switch (order) {
    case 0:
      return (*this)(y);
    case 1:
      return (3.0 * coeffs[3] * y + 2.0 * coeffs[2]) * y + coeffs[1];
    case 2:
      return 6.0 * coeffs[3] * y + 2.0 * coeffs[2];
    case 3:
      return 6.0 * coeffs[3];
    default:
      return 0.0;
  }
}

double DensityPiece::primitive(double y) const {
  return (((coeffs[3] / 4.0 * y + coeffs[2] / 3.0) * y + coeffs[1] / 2.0) * y + coeffs[0]) * y;
}

bool DensityPiece::vanishes() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

SignedMeasure::SignedMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> density, double domain_end)
    : atoms_(std::move(atoms)), density_(std::move(density)), domain_end_(domain_end) {
  if (!(domain_end_ > 0.0)) throw ArgumentError("domain end must be positive");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.position) || !std::isfinite(a.weight)) {
      throw ArgumentError("atom " + std::to_string(i) + " is not finite");
    }
    if (a.position < 0.0 || a.position >= domain_end_) {
      throw ArgumentError("atom " + std::to_string(i) + " lies outside [0, b)");
    }
    if (a.weight == 0.0) throw ArgumentError("atom " + std::to_string(i) + " has zero weight");
    if (i > 0 && !(atoms_[i - 1].position < a.position)) {
      throw ArgumentError("atom positions must be strictly increasing (atom " + std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i < density_.size(); ++i) {
    const DensityPiece& p = density_[i];
    if (!(p.from >= 0.0) || !(p.from < p.to) || p.to > domain_end_) {
      throw ArgumentError("density piece " + std::to_string(i) + " must satisfy 0 <= from < to <= b");
    }
    for (double c : p.coeffs) {
      if (!std::isfinite(c)) throw ArgumentError("density piece " + std::to_string(i) + " has a non-finite coefficient");
    }
    if (!std::isfinite(p.to) && !p.vanishes() && std::isfinite(domain_end_)) {
      throw ArgumentError("density piece " + std::to_string(i) + " is unbounded");
    }
    if (i > 0 && density_[i - 1].to > p.from) {
      throw ArgumentError("density pieces must be ordered and non-overlapping (piece " + std::to_string(i) + ")");
    }
  }
}

bool SignedMeasure::is_atomic() const {
  return std::all_of(density_.begin(), density_.end(), [](const DensityPiece& p) { return p.vanishes(); });
}

double SignedMeasure::support_end() const {
  double end = 0.0;
  if (!atoms_.empty()) end = std::nextafter(atoms_.back().position, kInfinity);
  for (const DensityPiece& p : density_) {
    if (!p.vanishes()) end = std::max(end, p.to);
  }
  return end;
}

const DensityPiece* SignedMeasure::piece_at(double y) const {
  auto it = std::upper_bound(density_.begin(), density_.end(), y,
                             [](double v, const DensityPiece& p) { return v < p.to; });
  if (it == density_.end() || y < it->from) return nullptr;
  return &*it;
}

double SignedMeasure::density_at(double y) const {
  const DensityPiece* p = piece_at(y);
  return p ? (*p)(y) : 0.0;
}

std::vector<double> SignedMeasure::breakpoints(double lo, double hi) const {
  std::vector<double> out;
  for (const Atom& a : atoms_) {
    if (a.position > lo && a.position < hi) out.push_back(a.position);
  }
  for (const DensityPiece& p : density_) {
    if (p.from > lo && p.from < hi) out.push_back(p.from);
    if (p.to > lo && p.to < hi) out.push_back(p.to);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SignedMeasure SignedMeasure::operator+(const SignedMeasure& other) const {
  if (domain_end_ != other.domain_end_) throw ArgumentError("measures live on different domains");
  std::map<double, double> merged;
  for (const Atom& a : atoms_) merged[a.position] += a.weight;
  for (const Atom& a : other.atoms_) merged[a.position] += a.weight;
  std::vector<Atom> atoms;
  for (const auto& [pos, w] : merged) {
    if (w != 0.0) atoms.push_back({pos, w});
  }

  std::vector<double> cuts;
  for (const auto* list : {&density_, &other.density_}) {
    for (const DensityPiece& p : *list) {
      cuts.push_back(p.from);
      cuts.push_back(p.to);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<DensityPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = std::isfinite(cuts[i + 1]) ? 0.5 * (cuts[i] + cuts[i + 1]) : cuts[i] + 1.0;
    DensityPiece sum{cuts[i], cuts[i + 1], {}};
    bool covered = false;
    for (const SignedMeasure* m : {this, &other}) {
      if (const DensityPiece* p = m->piece_at(mid)) {
        covered = true;
        for (int j = 0; j < 4; ++j) sum.coeffs[j] += p->coeffs[j];
      }
    }
    if (covered) pieces.push_back(sum);
  }
  return SignedMeasure(std::move(atoms), std::move(pieces), domain_end_);
}

SignedMeasure SignedMeasure::scaled(double factor) const {
  if (factor == 0.0) return zero(domain_end_);
  std::vector<Atom> atoms = atoms_;
  for (Atom& a : atoms) a.weight *= factor;
  std::vector<DensityPiece> pieces = density_;
  for (DensityPiece& p : pieces) {
    for (double& c : p.coeffs) c *= factor;
  }
  return SignedMeasure(std::move(atoms), std::move(pieces), domain_end_);
}

namespace {

void check_point(const SignedMeasure& m, double x) {
  if (!(x >= 0.0) || !(x < m.domain_end())) throw DomainError("point outside [0, b)");
}

// Roots of the cubic in the open interval (a, b); the interval is cut at the
// critical points so each monotone part holds at most one root.
std::vector<double> roots_in(const DensityPiece& p, double a, double b) {
  std::vector<double> cuts{a};
  const double qa = 3.0 * p.coeffs[3], qb = 2.0 * p.coeffs[2], qc = p.coeffs[1];
  if (qa != 0.0) {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + std::copysign(sq, qb));
      for (double r : {q / qa, qc / q}) {
        if (r > a && r < b) cuts.push_back(r);
      }
    }
  } else if (qb != 0.0) {
    const double r = -qc / qb;
    if (r > a && r < b) cuts.push_back(r);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    double flo = p(lo), fhi = p(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) == (fhi > 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = p(mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace

double abs_integral(const DensityPiece& piece, double a, double b) {
  if (!(a < b) || piece.vanishes()) return 0.0;
  if (!std::isfinite(b)) return kInfinity;
  std::vector<double> cuts{a};
  for (double r : roots_in(piece, a, b)) cuts.push_back(r);
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += std::abs(piece.primitive(cuts[i + 1]) - piece.primitive(cuts[i]));
  }
  return total;
}

double cdf(const SignedMeasure& m, double x) {
  check_point(m, x);
  if (x == 0.0) return 0.0;
  double sum = 0.0;
  for (const Atom& a : m.atoms()) {
    if (a.position >= x) break;
    sum += a.weight;
  }
  for (const DensityPiece& p : m.density()) {
    if (p.from >= x) break;
    sum += p.primitive(std::min(x, p.to)) - p.primitive(p.from);
  }
  return sum;
}

double atom_at(const SignedMeasure& m, double x) {
  check_point(m, x);
  for (const Atom& a : m.atoms()) {
    if (a.position == x) return a.weight;
  }
  return 0.0;
}

TotalVariationBudget total_variation(const SignedMeasure& m, double x0) {
  if (!(x0 > 0.0) || x0 > m.domain_end()) throw DomainError("total variation needs 0 < x0 <= b");
  TotalVariationBudget tv;
  for (const Atom& a : m.atoms()) {
    if (a.position >= x0) break;
    tv.value += std::abs(a.weight);
  }
  for (const DensityPiece& p : m.density()) {
    if (p.from >= x0) break;
    tv.value += abs_integral(p, p.from, std::min(x0, p.to));
  }
  return tv;
}

namespace detail {

void check_interval(const SignedMeasure& m, double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi) || hi > m.domain_end()) {
    throw DomainError("integration interval must satisfy 0 <= lo < hi <= b");
  }
}

std::vector<double> split_points(const SignedMeasure& m, double a, double b) {
  std::vector<double> cuts{a};
  for (const Atom& atom : m.atoms()) {
    if (atom.position > a && atom.position < b) cuts.push_back(atom.position);
  }
  cuts.push_back(b);
  return cuts;
}

}  // namespace detail

namespace {

// int_a^b exp(-rate (y - anchor)) p(y) dy.
Complex exp_poly_integral(const DensityPiece& p, Complex rate, double anchor, double a, double b) {
  if (std::abs(rate) * (b - a) < 2.0) {
    const auto& rule = gauss_legendre_rule(16);
    return integrate_composite([&](double y) { return std::exp(-rate * (y - anchor)) * p(y); }, a, b, 1, rule);
  }
  // Repeated integration by parts terminates for a cubic.
  auto primitive = [&](double y) {
    Complex series = 0.0;
    Complex inv = 1.0 / rate;
    Complex power = inv;
    for (int j = 0; j < 4; ++j) {
      series += p.derivative(j, y) * power;
      power *= inv;
    }
    return -std::exp(-rate * (y - anchor)) * series;
  };
  return primitive(b) - primitive(a);
}

}  // namespace

Complex integrate_exponential(const SignedMeasure& m, Complex rate, double anchor, double lo, double hi) {
  detail::check_interval(m, lo, hi);
  Complex sum = 0.0;
  for (const Atom& a : m.atoms()) {
    if (a.position < lo) continue;
    if (a.position >= hi) break;
    sum += a.weight * std::exp(-rate * (a.position - anchor));
  }
  for (const DensityPiece& p : m.density()) {
    const double a = std::max(lo, p.from);
    const double b = std::min(hi, p.to);
    if (!(a < b) || p.vanishes()) continue;
    if (!std::isfinite(b)) {
      if (rate.real() <= 0.0) throw DomainError("exponential integral diverges on an unbounded piece");
      // Primitive vanishes at infinity when Re(rate) > 0.
      const double cut = a + 1.0;
      sum += exp_poly_integral(p, rate, anchor, a, cut);
      Complex series = 0.0, inv = 1.0 / rate, power = inv;
      for (int j = 0; j < 4; ++j) {
        series += p.derivative(j, cut) * power;
        power *= inv;
      }
      sum += std::exp(-rate * (cut - anchor)) * series;
      continue;
    }
    sum += exp_poly_integral(p, rate, anchor, a, b);
  }
  return sum;
}

SignedMeasure shift_restrict(const SignedMeasure& m, double t) {
  if (!(t >= 0.0) || !(t < m.domain_end())) throw DomainError("shift point outside [0, b)");
  const double end = m.domain_end() - t;
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms()) {
    if (a.position >= t) atoms.push_back({a.position - t, a.weight});
  }
  std::vector<DensityPiece> pieces;
  for (const DensityPiece& p : m.density()) {
    if (p.to <= t) continue;
    // Taylor shift: q(y) = p(y + t).
    const auto& c = p.coeffs;
    DensityPiece q;
    q.from = std::max(0.0, p.from - t);
    q.to = std::min(end, p.to - t);
    q.coeffs = {((c[3] * t + c[2]) * t + c[1]) * t + c[0], (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1],
                3.0 * c[3] * t + c[2], c[3]};
    if (q.from < q.to) pieces.push_back(q);
  }
  return SignedMeasure(std::move(atoms), std::move(pieces), end);
}

}  // namespace weylscope
