#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using weylscope::cli::run;

namespace {

const std::string kData = WEYLSCOPE_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "weylscope_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("solve dumps the fundamental system") {
  const Result r = invoke({"solve", "--measure", kData + "/delta0.json", "--z", "-1", "--xmax", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,re_c,im_c,re_cp,im_cp,re_s,im_s,re_sp,im_sp\n", 0) == 0);
  const std::string last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  CHECK(last.rfind("1,3.89348302210284", 0) == 0);

  const Result free = invoke({"solve", "--measure", kData + "/free.json", "--z", "0+1i", "--xmax", "1", "--format", "json"});
  REQUIRE(free.code == 0);
  const auto j = nlohmann::json::parse(free.out);
  CHECK(j["grid"].back()["x"].get<double>() == 1.0);
  CHECK(j["grid"].front()["c"][0].get<double>() == 1.0);
}

TEST_CASE("weyl reports the delta example within its band") {
  const Result r = invoke({"weyl", "--measure", kData + "/delta0.json", "--z", "0+10000i", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["within_band"].get<bool>());
  const Result free = invoke({"weyl", "--measure", kData + "/free.json", "--z", "0+1i"});
  CHECK(free.out.find("-0.70710678118654") != std::string::npos);
}

TEST_CASE("check passes on the bundled measures") {
  for (const char* name : {"free.json", "delta0.json", "two_atoms.json", "mixed.json", "constant_density.json"}) {
    const Result r = invoke({"check", "--measure", kData + "/" + name});
    CHECK_MESSAGE(r.code == 0, name);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("asym and dist sweeps") {
  const Result a = invoke({"asym", "--measure", kData + "/free.json", "--rmin", "100", "--rmax", "1e6"});
  REQUIRE(a.code == 0);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "R,theta,re_m_truth,im_m_truth,re_m_asym,im_m_asym,residual,scaled_residual");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find_last_of(',');
    const auto prev = line.find_last_of(',', comma - 1);
    CHECK(std::stod(line.substr(prev + 1, comma - prev - 1)) < 1e-9);
    ++rows;
  }
  CHECK(rows == 17);

  const Result d = invoke({"dist", "--measure", kData + "/delta_p.json", "--phi-center", "0.3", "--phi-width", "0.2",
                           "--rmin", "100", "--rmax", "1e4", "--points-per-decade", "1"});
  REQUIRE(d.code == 0);
  CHECK(d.out.find("phi_center,phi_width") != std::string::npos);
}

TEST_CASE("byte-identical output across runs and job counts") {
  const fs::path dir = scratch_dir();
  const fs::path first = dir / "first.csv", second = dir / "second.csv";
  const std::vector<std::string> base{"asym", "--measure", kData + "/mixed.json", "--rmin", "100", "--rmax", "1e5"};
  auto with = [&](const fs::path& out, const std::string& jobs) {
    auto args = base;
    for (const std::string& s : {std::string("--out"), out.string(), std::string("--jobs"), jobs}) args.push_back(s);
    return invoke(args);
  };
  REQUIRE(with(first, "1").code == 0);
  REQUIRE(with(second, "4").code == 0);
  CHECK(slurp(first) == slurp(second));
  CHECK(!fs::exists(first.string() + ".tmp"));
}

TEST_CASE("input errors exit with code 1") {
  const Result missing = invoke({"solve", "--measure", "/nonexistent/measure.json"});
  CHECK(missing.code == 1);
  CHECK(!missing.err.empty());

  const fs::path bad = scratch_dir() / "bad.json";
  std::ofstream(bad) << "{\n  \"atoms\": [\n    [0.5, 1.0],\n    [0.2, 1.0]\n  ]\n}\n";
  const Result parse = invoke({"weyl", "--measure", bad.string(), "--z", "0+1i"});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("line 4") != std::string::npos);

  CHECK(invoke({"asym", "--measure", kData + "/free.json", "--theta", "4"}).code == 1);
  CHECK(invoke({"asym", "--measure", kData + "/free.json", "--rmin", "10", "--rmax", "1"}).code == 1);
  CHECK(invoke({"solve", "--measure", kData + "/free.json", "--z", "bogus"}).code == 1);
  CHECK(invoke({"solve", "--measure", kData + "/free.json", "--format", "xml"}).code == 1);
  CHECK(invoke({"dist", "--measure", kData + "/free.json", "--phi-center", "0.05"}).code == 1);
  CHECK(invoke({}).code == 1);
}

TEST_CASE("solver failures exit with code 2 and leave no output file") {
  const fs::path out = scratch_dir() / "never.csv";
  fs::remove(out);
  const Result r = invoke({"solve", "--measure", kData + "/mixed.json", "--tol", "1e-300", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("last residual") != std::string::npos);
  CHECK(!fs::exists(out));
}
