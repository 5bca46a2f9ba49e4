#pragma once

#include <string>
#include <vector>

#include "weylscope/fundamental.hpp"
#include "weylscope/measure.hpp"

namespace weylscope {

struct InvariantResult {
  std::string name;
  bool passed = false;
  /// Worst observed value of the checked quantity.
  double worst = 0.0;
  double threshold = 0.0;
};

/// max over grid points of |W_x(c, s) - 1| scaled by |c s'| + |c' s|, which
/// is what double precision can resolve once e^{2 Re(k) x} is large.
double wronskian_defect(const FundamentalSystem& fs);

/// max over grid points of |W_x(c, s) - 1| in raw values.
double wronskian_raw_defect(const FundamentalSystem& fs);

/// Runs the solver invariants at one z on [0, x_max]: Wronskian constancy,
/// disk nesting between x_max/2 and x_max, membership of the truncated
/// quotient in its disk, jump consistency at atoms, and for purely atomic
/// half-line measures oracle agreement and the Herglotz sign.
std::vector<InvariantResult> check_invariants(const SignedMeasure& m, const SpectralParameter& z, double x_max,
                                              const SolveOptions& options = {});

}  // namespace weylscope
