#include "abscat/cli.hpp"
#include "abscat/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace abscat;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("abscat_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name, const std::string &content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty())
      std::ofstream(p) << content;
    return p;
  }
};

} // namespace

TEST_CASE("flux subcommand") {
  TempDir tmp;
  const auto cfg = tmp.file("pot.json", R"({"alpha": 0.7, "bumps": [], "gradL": [], "V": []})");
  const auto r = run({"flux", "--config", cfg});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("alpha").get<double>() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("kernel then recover") {
  TempDir tmp;
  const auto k = tmp.file("k.csv");
  REQUIRE(run({"kernel", "--alpha", "0.5", "--n", "1024", "--out", k}).code == cli::kExitOk);
  const auto v = run({"recover", "--kernel", k});
  REQUIRE(v.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j.at("alpha").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(j.at("ceil_alpha").get<int>() == 1);
  CHECK(j.at("witness").get<bool>());

  const auto s = run({"strip", "--kernel", k, "--eps", "0.2,0.1"});
  REQUIRE(s.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(s.out).at("eps").size() == 2);

  CHECK(run({"recover", "--kernel", k, "--no-convex"}).code == cli::kExitNumeric);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({}).code == cli::kExitSchema);
  CHECK(run({"bogus"}).code == cli::kExitSchema);
  CHECK(run({"wave"}).code == cli::kExitSchema);
  CHECK(run({"kernel", "--alpha", "x"}).code == cli::kExitSchema);
  CHECK(run({"kernel", "--alpha", "0.5", "--n", "8"}).code == cli::kExitSchema);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const auto bad = tmp.file("bad.json", R"({"alpha": "half"})");
  CHECK(run({"flux", "--config", bad}).code == cli::kExitSchema);
  const auto broken = tmp.file("broken.csv", "n,delta_re,delta_im,alpha_hint\n64,1,0,\n");
  CHECK(run({"recover", "--kernel", broken}).code == cli::kExitSchema);

  const auto zero = tmp.file("zero.csv");
  REQUIRE(run({"kernel", "--alpha", "0", "--n", "256", "--out", zero}).code == cli::kExitOk);
  const auto r = run({"recover", "--kernel", zero});
  CHECK(r.code == cli::kExitNumeric);
  CHECK_FALSE(r.err.empty());

  const auto pot = tmp.file("pot.json", R"({"alpha": 0.5})");
  CHECK(run({"flux", "--config", pot, "--radii", "20,10"}).code == cli::kExitNumeric);
}

TEST_CASE("outputs are deterministic") {
  TempDir tmp;
  const std::vector<std::string> kernel{"--seed", "7", "kernel", "--alpha", "0.3", "--n", "64",
                                        "--perturb", "0.1", "--noise", "0.01"};
  const auto a = run(kernel), b = run(kernel);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  auto other = kernel;
  other[1] = "8";
  CHECK(run(other).out != a.out);

  const std::vector<std::string> wave{"wave", "--alpha", "0.25", "--n", "12", "--extent", "3"};
  auto threaded = wave;
  threaded.insert(threaded.begin(), {"--threads", "3"});
  const auto w1 = run(wave), w2 = run(threaded);
  REQUIRE(w1.code == cli::kExitOk);
  CHECK(w1.out == w2.out);
  CHECK(w1.out.rfind("x1,x2,re,im\n", 0) == 0);
}

TEST_CASE("radon and gauge-check") {
  TempDir tmp;
  const auto cfg = tmp.file("pot.json", R"({"alpha": 0.4, "bumps": [{"center": [0.2, 0.1], "strength": 1, "width": 0.5}],
      "V": [{"center": [2, 1], "strength": 1, "width": 0.6}]})");
  const auto sino = tmp.file("s.csv");
  const auto rec = tmp.file("r.csv");
  const auto r = run({"radon", "--config", cfg, "--n-p", "65", "--n-phi", "64", "--grid", "32",
                      "--sinogram-out", sino, "--out", rec});
  REQUIRE(r.code == cli::kExitOk);
  const auto again = tmp.file("r2.csv");
  REQUIRE(run({"radon", "--sinogram", sino, "--grid", "32", "--out", again}).code == cli::kExitOk);
  CHECK(io::read_file(rec) == io::read_file(again));

  const auto g = run({"gauge-check", "--config", cfg, "--winding", "2"});
  REQUIRE(g.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(g.out);
  CHECK(j.at("phases_match").get<bool>());
  CHECK(j.at("certificate").get<int>() == 2);

  const auto odd = nlohmann::json::parse(run({"gauge-check", "--config", cfg, "--winding", "1"}).out);
  CHECK_FALSE(odd.at("phases_match").get<bool>());
  CHECK(odd.at("certificate").is_null());
}
