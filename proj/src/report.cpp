#include "weylscope/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace weylscope {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  std::string im = format_double(v.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(v.real()) + im + "i";
}

Complex parse_complex(const std::string& text) {
  const std::string s = [&] {
    std::string out;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
  }();
  auto fail = [&]() -> Complex { throw ArgumentError("cannot parse complex number '" + text + "'"); };
  if (s.empty()) return fail();
  const char* begin = s.c_str();
  const char* end = begin + s.size();
  if (s.back() != 'i') {
    char* stop = nullptr;
    const double re = std::strtod(begin, &stop);
    if (stop != end) return fail();
    return {re, 0.0};
  }
  // Imaginary part: the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size() - 1; i-- > 0;) {
    if ((s[i] == '+' || s[i] == '-') && i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_imag = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    char* stop = nullptr;
    const double v = std::strtod(part.c_str(), &stop);
    if (stop != part.c_str() + part.size()) fail();
    return v;
  };
  const std::string body = s.substr(0, s.size() - 1);
  if (split == std::string::npos) return {0.0, parse_imag(body)};
  char* stop = nullptr;
  const std::string re_part = body.substr(0, split);
  const double re = std::strtod(re_part.c_str(), &stop);
  if (stop != re_part.c_str() + re_part.size()) return fail();
  return {re, parse_imag(body.substr(split))};
}

std::string fundamental_csv(const FundamentalSystem& fs) {
  std::ostringstream out;
  out << "x,re_c,im_c,re_cp,im_cp,re_s,im_s,re_sp,im_sp\n";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const FundamentalValues v = fs.values(i);
    out << format_double(fs.grid[i]);
    for (Complex c : {v.c, v.c_prime, v.s, v.s_prime}) {
      out << ',' << format_double(c.real()) << ',' << format_double(c.imag());
    }
    out << '\n';
  }
  return out.str();
}

namespace {

using nlohmann::ordered_json;

ordered_json pair(Complex v) { return ordered_json::array({v.real(), v.imag()}); }

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string fundamental_json(const FundamentalSystem& fs) {
  ordered_json doc;
  doc["z"] = pair(fs.spectral.z());
  doc["k"] = pair(fs.spectral.k());
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const FundamentalValues v = fs.values(i);
    rows.push_back({{"x", fs.grid[i]}, {"c", pair(v.c)}, {"cp", pair(v.c_prime)}, {"s", pair(v.s)}, {"sp", pair(v.s_prime)}});
  }
  doc["grid"] = rows;
  return dump(doc);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "R,theta,re_m_truth,im_m_truth,re_m_asym,im_m_asym,residual,scaled_residual\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.radius) << ',' << format_double(r.theta) << ',' << format_double(r.m_truth.real()) << ','
        << format_double(r.m_truth.imag()) << ',' << format_double(r.m_asymptotic.real()) << ','
        << format_double(r.m_asymptotic.imag()) << ',' << format_double(r.residual) << ','
        << format_double(r.scaled_residual) << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  ordered_json doc = ordered_json::array();
  for (const SweepRow& r : rows) {
    doc.push_back({{"R", r.radius},
                   {"theta", r.theta},
                   {"m_truth", pair(r.m_truth)},
                   {"m_asym", pair(r.m_asymptotic)},
                   {"residual", r.residual},
                   {"scaled_residual", r.scaled_residual},
                   {"inconclusive", r.inconclusive}});
  }
  return dump(doc);
}

std::string distributional_csv(const std::vector<DistributionalRow>& rows) {
  std::ostringstream out;
  out << "R,theta,re_lhs,im_lhs,re_rhs,im_rhs,residual,scaled_residual,phi_center,phi_width\n";
  for (const DistributionalRow& r : rows) {
    out << format_double(r.radius) << ',' << format_double(r.theta) << ',' << format_double(r.lhs.real()) << ','
        << format_double(r.lhs.imag()) << ',' << format_double(r.rhs.real()) << ',' << format_double(r.rhs.imag())
        << ',' << format_double(r.residual) << ',' << format_double(r.scaled_residual) << ','
        << format_double(r.phi_center) << ',' << format_double(r.phi_width) << '\n';
  }
  return out.str();
}

std::string distributional_json(const std::vector<DistributionalRow>& rows) {
  ordered_json doc = ordered_json::array();
  for (const DistributionalRow& r : rows) {
    doc.push_back({{"R", r.radius},
                   {"theta", r.theta},
                   {"lhs", pair(r.lhs)},
                   {"rhs", pair(r.rhs)},
                   {"residual", r.residual},
                   {"scaled_residual", r.scaled_residual},
                   {"phi_center", r.phi_center},
                   {"phi_width", r.phi_width}});
  }
  return dump(doc);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(temp, ec);
      throw std::runtime_error("failed writing '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw std::runtime_error("cannot rename onto '" + path + "'");
  }
}

}  // namespace weylscope
