#pragma once

#include <string>
#include <vector>

#include "weylscope/asymptotics.hpp"
#include "weylscope/distributional.hpp"
#include "weylscope/fundamental.hpp"

namespace weylscope {

/// 17 significant digits, locale independent.
std::string format_double(double v);

/// Parse "RE+IMi", "RE-IMi", "RE", "IMi" (e.g. "0+1i", "-1", "1e4i").
Complex parse_complex(const std::string& text);
std::string format_complex(Complex v);

/// x, re_c, im_c, re_cp, im_cp, re_s, im_s, re_sp, im_sp
std::string fundamental_csv(const FundamentalSystem& fs);
std::string fundamental_json(const FundamentalSystem& fs);

/// R, theta, re_m_truth, im_m_truth, re_m_asym, im_m_asym, residual, scaled_residual
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

/// Sweep columns plus phi_center, phi_width.
std::string distributional_csv(const std::vector<DistributionalRow>& rows);
std::string distributional_json(const std::vector<DistributionalRow>& rows);

/// Write to a sibling temporary file and rename over `path`, so readers never
/// see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace weylscope
