#include "cli/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = oqf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("oqf_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == oqf::cli::kOk);
  CHECK(run({"coeffs", "--help"}).code == oqf::cli::kOk);
  CHECK(run({"verify", "--help"}).code == oqf::cli::kOk);
  CHECK(run({}).code == oqf::cli::kInvalid);
  CHECK(run({"frobnicate"}).code == oqf::cli::kInvalid);
  CHECK(run({"coeffs", "--bogus", "1"}).code == oqf::cli::kInvalid);
  const auto r = run({"coeffs", "--m", "3", "--n", "1"});
  CHECK(r.code == oqf::cli::kInvalid);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("numerical failures exit with their own code") {
  CHECK(run({"efpoly", "--k", "60"}).code == oqf::cli::kNumerical);
}

TEST_CASE("coeffs JSON") {
  const auto r = run({"coeffs", "--m", "2", "--omega", "2.7", "--n", "8"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["command"] == "coeffs");
  CHECK(j["branch"] == "generic");
  CHECK(j["coefficients"].size() == 9u);
  // first weight from the frozen 50-digit reference
  CHECK(j["coefficients"][0]["re"].get<double>() == doctest::Approx(0.044974409806168736).epsilon(1e-12));
}

TEST_CASE("coeffs CSV") {
  const auto r = run({"coeffs", "--m", "1", "--n", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("beta,re,im") != std::string::npos);
  CHECK(run({"coeffs", "--format", "xml"}).code == oqf::cli::kInvalid);
}

TEST_CASE("oracle, efpoly, verify and convergence") {
  const auto o = Json::parse(run({"oracle", "--m", "3", "--omega", "1.3", "--n", "16"}).out);
  CHECK(o["closed_form_rel_diff"].get<double>() < 1e-8);
  CHECK(o["provenance"] == "oracle");

  const auto e = Json::parse(run({"efpoly", "--k", "4"}).out);
  CHECK(e["coefficients"] == Json::array({1, 26, 66, 26, 1}));

  const auto v = Json::parse(run({"verify", "--m", "2", "--h", "0.05"}).out);
  CHECK(v["convolution"]["max_residual"].get<double>() < 1e-8);
  CHECK(v["moments"].size() == 5u);

  const auto c = Json::parse(run({"convergence", "--m", "2"}).out);
  CHECK(c["fitted_order"].get<double>() > 1.7);
  CHECK(c["points"].size() == 5u);
  CHECK(run({"convergence", "--ladder", "32,x"}).code == oqf::cli::kInvalid);
}

TEST_CASE("config files override flags") {
  const auto dir = scratch_dir("config");
  const auto cfg = dir / "c.json";
  std::ofstream(cfg) << R"({"command": "coeffs", "m": 1, "omega": 0, "n": 2})";
  const auto r = run({"coeffs", "--m", "3", "--n", "9", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["m"] == 1);
  CHECK(j["coefficients"].size() == 3u);

  std::ofstream(cfg) << R"({"mm": 1})";
  CHECK(run({"coeffs", "--config", cfg.string()}).code == oqf::cli::kInvalid);
  std::ofstream(cfg) << R"({"command": "oracle"})";
  CHECK(run({"coeffs", "--config", cfg.string()}).code == oqf::cli::kInvalid);
  CHECK(run({"coeffs", "--config", (dir / "none.json").string()}).code == oqf::cli::kInvalid);
}

TEST_CASE("reconstruct writes reproducible reports") {
  const auto dir = scratch_dir("recon");
  const std::vector<std::string> args = {"reconstruct", "--size", "24", "--views", "18", "--methods", "dft,oqf-m2",
                                         "--noise", "0.1", "--seed", "3", "--no-timing", "--save-sinogram", "both",
                                         "--output-dir", dir.string()};
  const auto first = run(args);
  REQUIRE(first.code == 0);
  const std::string m1 = slurp(dir / "metrics_oqf-m2.json");
  const std::string c1 = slurp(dir / "comparison.json");
  REQUIRE(run(args).code == 0);
  CHECK(slurp(dir / "metrics_oqf-m2.json") == m1);
  CHECK(slurp(dir / "comparison.json") == c1);
  CHECK(first.out == c1);

  const auto m = Json::parse(m1);
  CHECK(m.size() == 7u);
  CHECK(m["method"] == "oqf");
  CHECK(m["m"] == 2);
  CHECK(m["noise_seed"] == 3);
  CHECK(m["runtime_ms"].is_null());
  CHECK(m["psnr"].is_number());
  CHECK(fs::exists(dir / "recon_dft.pgm"));
  CHECK(fs::exists(dir / "reference.pgm"));
  CHECK(fs::exists(dir / "sinogram.csv"));

  // Reconstructing the saved noisy sinogram gives the same numbers.
  const auto dir2 = scratch_dir("recon2");
  REQUIRE(run({"reconstruct", "--size", "24", "--methods", "oqf-m2", "--sinogram", (dir / "sinogram.bin").string(),
               "--no-timing", "--output-dir", dir2.string()})
              .code == 0);
  const auto m2 = Json::parse(slurp(dir2 / "metrics_oqf-m2.json"));
  CHECK(m2["psnr"].get<double>() == m["psnr"].get<double>());
}

TEST_CASE("reconstruct argument checks") {
  const auto dir = scratch_dir("recon_bad");
  CHECK(run({"reconstruct", "--methods", "fft", "--output-dir", dir.string()}).code == oqf::cli::kInvalid);
  CHECK(run({"reconstruct", "--methods", "dft,dft", "--output-dir", dir.string()}).code == oqf::cli::kInvalid);
  CHECK(run({"reconstruct", "--noise", "2", "--output-dir", dir.string()}).code == oqf::cli::kInvalid);
  CHECK(run({"reconstruct", "--ramp", "hann", "--output-dir", dir.string()}).code == oqf::cli::kInvalid);
  CHECK(run({"reconstruct", "--sinogram", (dir / "missing.csv").string(), "--output-dir", dir.string()}).code ==
        oqf::cli::kInvalid);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch_dir("env");
  ::setenv(oqf::cli::kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = run({"reconstruct", "--size", "16", "--views", "8", "--methods", "dft", "--image-format", "none"});
  ::unsetenv(oqf::cli::kOutputDirEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "metrics_dft.json"));
  CHECK_FALSE(fs::exists(dir / "recon_dft.pgm"));
}

}
