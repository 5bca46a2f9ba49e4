#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "weylscope/asymptotics.hpp"
#include "weylscope/distributional.hpp"
#include "weylscope/invariants.hpp"
#include "weylscope/measure_io.hpp"
#include "weylscope/report.hpp"
#include "weylscope/weyl.hpp"

namespace weylscope::cli {

namespace {

struct Common {
  std::string measure_path;
  std::string format = "csv";
  std::string out_path;
  unsigned jobs = 1;
  double tol = 1e-12;
};

struct RaySpec {
  double theta = M_PI / 2.0;
  double r_min = 1e2;
  double r_max = 1e6;
  int points_per_decade = 4;
};

unsigned effective_jobs(unsigned requested) {
  if (const char* env = std::getenv("WEYLSCOPE_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, requested);
}

void emit(const Common& common, const std::string& content, std::ostream& out) {
  if (common.out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(common.out_path, content);
  }
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--measure", common.measure_path, "Measure description (JSON)")->required();
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", common.out_path, "Output file (stdout if omitted)");
  cmd->add_option("--jobs", common.jobs, "Worker threads (WEYLSCOPE_JOBS overrides)");
  cmd->add_option("--tol", common.tol, "Picard tolerance")->check(CLI::PositiveNumber);
}

void add_ray(CLI::App* cmd, RaySpec& ray) {
  cmd->add_option("--theta", ray.theta, "Ray angle in (0, pi)");
  cmd->add_option("--rmin", ray.r_min, "Smallest |z|");
  cmd->add_option("--rmax", ray.r_max, "Largest |z|");
  cmd->add_option("--points-per-decade", ray.points_per_decade, "Ray sampling density");
}

// Invariants at the first ray point; the caller turns a failure into exit 3.
bool invariants_hold(const SignedMeasure& m, const SpectralParameter& z, double x_max, double tol,
                     std::ostream& err) {
  SolveOptions opts;
  opts.tol = tol;
  bool ok = true;
  for (const InvariantResult& r : check_invariants(m, z, x_max, opts)) {
    if (!r.passed) {
      err << "invariant " << r.name << " failed: " << format_double(r.worst) << " > " << format_double(r.threshold)
          << "\n";
      ok = false;
    }
  }
  return ok;
}

std::string weyl_report(const SignedMeasure& m, const std::vector<SpectralParameter>& zs, double x0, double tol,
                        const std::string& format) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "re_z,im_z,x0,re_m,im_m,error_radius,re_center,im_center,radius,re_m_exact,im_m_exact,within_band\n";
  for (const SpectralParameter& z : zs) {
    SolveOptions opts;
    opts.tol = tol;
    opts.probes.push_back(x0);
    const FundamentalSystem fs = solve_fundamental(m, z, x0, opts);
    const WeylDisk disk = weyl_disk(fs, x0);
    const MEstimate est = m_truncated(fs, x0);
    const bool has_exact = m.is_atomic() && !std::isfinite(m.domain_end());
    const Complex exact = has_exact ? exact_m_compact(m, z) : Complex(NAN, NAN);
    const bool within = has_exact ? std::abs(exact - est.value) <= est.error_radius + 1e-12 * std::abs(exact) : true;
    csv << format_double(z.z().real()) << ',' << format_double(z.z().imag()) << ',' << format_double(x0) << ','
        << format_double(est.value.real()) << ',' << format_double(est.value.imag()) << ','
        << format_double(est.error_radius) << ',' << format_double(disk.center.real()) << ','
        << format_double(disk.center.imag()) << ',' << format_double(disk.radius) << ','
        << format_double(exact.real()) << ',' << format_double(exact.imag()) << ',' << (within ? 1 : 0) << '\n';
    ordered_json row;
    row["z"] = {z.z().real(), z.z().imag()};
    row["x0"] = x0;
    row["m"] = {est.value.real(), est.value.imag()};
    row["error_radius"] = est.error_radius;
    row["center"] = {disk.center.real(), disk.center.imag()};
    row["radius"] = disk.radius;
    if (has_exact) row["m_exact"] = {exact.real(), exact.imag()};
    row["within_band"] = within;
    rows.push_back(row);
  }
  return format == "json" ? rows.dump(2) + "\n" : csv.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"weylscope: Weyl-Titchmarsh m-functions for measure-valued Schroedinger potentials"};
  app.require_subcommand(1);

  Common common;
  RaySpec ray;
  std::string z_text = "0+1i";
  std::vector<std::string> z_list;
  double x_max = 1.0;
  double x0 = 1.0;
  double dist_x0 = 0.0;
  int order = 1;
  double phi_center = 0.5, phi_width = 0.1, phi_height = 1.0;
  int quad_points = 12;

  CLI::App* solve = app.add_subcommand("solve", "Dump the fundamental system c, s on [0, xmax]");
  add_common(solve, common);
  solve->add_option("--z", z_text, "Spectral parameter RE+IMi");
  solve->add_option("--xmax", x_max, "Right end of the grid");

  CLI::App* weyl = app.add_subcommand("weyl", "Truncated m-function with Weyl-disk error band");
  add_common(weyl, common);
  weyl->add_option("--z", z_list, "Spectral parameters RE+IMi")->required();
  weyl->add_option("--x0", x0, "Truncation point");

  CLI::App* asym = app.add_subcommand("asym", "Residual sweep of the first/second order expansion");
  add_common(asym, common);
  add_ray(asym, ray);
  asym->add_option("--x0", x0, "Upper limit of the expansion integrals");
  asym->add_option("--order", order, "Expansion order")->check(CLI::IsMember({1, 2}));

  CLI::App* dist = app.add_subcommand("dist", "Residual sweep of the distributional expansion");
  add_common(dist, common);
  add_ray(dist, ray);
  dist->add_option("--phi-center", phi_center, "Bump center")->required();
  dist->add_option("--phi-width", phi_width, "Bump half-width");
  dist->add_option("--phi-height", phi_height, "Bump height");
  dist->add_option("--quad-points", quad_points, "Gauss-Legendre points per panel");
  dist->add_option("--x0", dist_x0, "Truncation length for m(z, t); <= 0 picks one covering the support");

  CLI::App* check = app.add_subcommand("check", "Run the invariant suite on a measure");
  add_common(check, common);
  check->add_option("--z", z_list, "Spectral parameters (default i, 4i, 10i, 100i)");
  check->add_option("--xmax", x_max, "Right end of the grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    const SignedMeasure measure = load_measure(common.measure_path);
    const unsigned jobs = effective_jobs(common.jobs);

    if (*solve) {
      SolveOptions opts;
      opts.tol = common.tol;
      const FundamentalSystem fs = solve_fundamental(measure, SpectralParameter(parse_complex(z_text)), x_max, opts);
      emit(common, common.format == "json" ? fundamental_json(fs) : fundamental_csv(fs), out);
      return kOk;
    }
    if (*weyl) {
      std::vector<SpectralParameter> zs;
      for (const std::string& s : z_list) zs.emplace_back(parse_complex(s));
      emit(common, weyl_report(measure, zs, x0, common.tol, common.format), out);
      return kOk;
    }
    if (*asym) {
      const Ray r = Ray::log_spaced(ray.theta, ray.r_min, ray.r_max, ray.points_per_decade);
      TruthOptions truth;
      truth.solve.tol = common.tol;
      truth.x_truncate = x0;
      const auto rows = residual_sweep(measure, x0, r, order == 2 ? ExpansionOrder::Second : ExpansionOrder::First,
                                       truth, jobs);
      const bool ok = invariants_hold(measure, SpectralParameter::on_ray(r.radii.front(), r.theta), x0, common.tol, err);
      emit(common, common.format == "json" ? sweep_json(rows) : sweep_csv(rows), out);
      return ok ? kOk : kInvariantFailure;
    }
    if (*dist) {
      const Ray r = Ray::log_spaced(ray.theta, ray.r_min, ray.r_max, ray.points_per_decade);
      const TestFunction phi = bump(phi_center, phi_width, phi_height, 0.0, measure.domain_end());
      DistributionalOptions opts;
      opts.quad_points = quad_points;
      opts.jobs = jobs;
      opts.x0 = dist_x0;
      opts.solve.tol = common.tol;
      const auto rows = distributional_residual_sweep(measure, phi, r, opts);
      const double x_check = std::max(phi.hi(), measure.support_end());
      const bool ok = x_check >= measure.domain_end() ||
                      invariants_hold(measure, SpectralParameter::on_ray(r.radii.front(), r.theta), x_check,
                                      common.tol, err);
      emit(common, common.format == "json" ? distributional_json(rows) : distributional_csv(rows), out);
      return ok ? kOk : kInvariantFailure;
    }
    if (*check) {
      std::vector<SpectralParameter> zs;
      if (z_list.empty()) {
        for (double im : {1.0, 4.0, 10.0, 100.0}) zs.emplace_back(Complex(0.0, im));
      } else {
        for (const std::string& s : z_list) zs.emplace_back(parse_complex(s));
      }
      SolveOptions opts;
      opts.tol = common.tol;
      std::ostringstream report;
      bool ok = true;
      for (const SpectralParameter& z : zs) {
        for (const InvariantResult& r : check_invariants(measure, z, x_max, opts)) {
          report << (r.passed ? "PASS " : "FAIL ") << r.name << " z=" << format_complex(z.z())
                 << " worst=" << format_double(r.worst) << " threshold=" << format_double(r.threshold) << "\n";
          ok = ok && r.passed;
        }
      }
      emit(common, report.str(), out);
      return ok ? kOk : kInvariantFailure;
    }
  } catch (const IterationLimitError& e) {
    err << "error: " << e.what() << " (last residual " << format_double(e.last_residual) << ")\n";
    return kSolverError;
  } catch (const ParseError& e) {
    err << "error: " << common.measure_path << ":" << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace weylscope::cli
