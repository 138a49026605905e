#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "hsl/cli.hpp"
#include "hsl/grids.hpp"
#include "hsl/scalar_ground_state.hpp"

using namespace hsl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out, err;
  json result() const { return json::parse(out)["result"]; }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hsl");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int s = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {s, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("hsl_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(cli::fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(cli::fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(cli::fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("alpha lists") {
  CHECK(cli::parse_alphas("0:25:200").size() == 9);
  CHECK(cli::parse_alphas("0:25:200").back() == 200);
  CHECK(cli::parse_alphas("1,2.5,7") == std::vector<double>{1, 2.5, 7});
  CHECK_THROWS_AS(cli::parse_alphas("0:0:10"), Error);
  CHECK_THROWS_AS(cli::parse_alphas("1,x"), Error);
}

TEST_CASE("classify") {
  auto r = run({"classify", "--N", "3", "--p", "2", "--q", "2"});
  REQUIRE(r.status == 0);
  CHECK(r.result()["side"] == "Below");
  CHECK(r.result()["gap"].get<double>() == doctest::Approx(1.0));
  const auto j = json::parse(r.out);
  CHECK(j["provenance"]["version"] == "0.1.0");
  CHECK(j["provenance"]["config_hash"].get<std::string>().size() == 16);

  auto bad = run({"classify", "--p", "0.5"});
  CHECK(bad.status != 0);
  const auto e = json::parse(bad.err);
  CHECK(e["error"]["code"] == "InvalidArgument");
  CHECK(e["error"]["status"] == bad.status);

  auto on = run({"classify", "--N", "3", "--p", "5", "--q", "5"});
  CHECK(on.result()["side"] == "On");
}

TEST_CASE("region csv crosses the hyperbola") {
  const auto dir = scratch("region");
  auto r = run({"classify", "--N", "3", "--alpha", "3", "--beta", "-1", "--p", "2", "--q", "2", "--out", dir.string()});
  REQUIRE(r.status == 0);
  std::ifstream is(dir / "region.csv");
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# hsl", 0) == 0);
  std::getline(is, line);
  CHECK(line == "P,Q,gap,side");
  int below = 0, above = 0;
  while (std::getline(is, line)) {
    const double gap = std::stod(line.substr(line.find(',', line.find(',') + 1) + 1));
    const bool b = line.find("Below") != std::string::npos;
    CHECK(b == (gap > 0));
    (b ? below : above)++;
  }
  CHECK(below > 0);
  CHECK(above > 0);
  CHECK(below + above == 100 * 100);
}

TEST_CASE("solve-scalar oracle and round trip") {
  const auto dir = scratch("scalar");
  auto r = run({"solve-scalar", "--N", "3", "--p", "1", "--alpha", "0", "--grid", "256", "--out", dir.string()});
  REQUIRE(r.status == 0);
  CHECK(r.result()["level"].get<double>() == doctest::Approx(9.8696).epsilon(0.01));
  CHECK(r.result()["converged"] == true);

  const auto loaded = std::get<RadialFunction>(load_function((dir / "u.grid").string()));
  const auto direct = minimize_radial(3, 1, 0, RadialGrid(3, 256));
  REQUIRE(loaded.values.size() == direct.minimizer.values.size());
  for (std::size_t i = 0; i < loaded.values.size(); ++i) CHECK(loaded.values[i] == direct.minimizer.values[i]);
}

TEST_CASE("same config and seed reproduce the same json") {
  const std::vector<std::string> args{"solve-scalar", "--N", "2", "--p", "3", "--alpha", "4",
                                      "--grid", "16", "--grid-theta", "16", "--init", "random", "--seed", "7"};
  const auto a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "8";
  const auto c = run(other);
  CHECK(json::parse(c.out)["provenance"]["config_hash"] != json::parse(a.out)["provenance"]["config_hash"]);
  CHECK(json::parse(c.out)["provenance"]["seed"] == 8);
}

TEST_CASE("scan writes a ratio column") {
  const auto dir = scratch("scan");
  auto r = run({"scan", "--p", "3", "--alphas", "0:25:200", "--grid", "32", "--grid-theta", "32", "--jobs", "4",
                "--out", dir.string()});
  REQUIRE(r.status == 0);
  const auto rows = r.result()["rows"];
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& row : rows) CHECK(row["level_rad"].get<double>() >= row["level_full"].get<double>() * (1 - 1e-6));
  std::ifstream is(dir / "scan.csv");
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  CHECK(line == "alpha,level_rad,level_full,ratio,iterations");
}

TEST_CASE("pohozaev on a saved critical pair") {
  const auto dir = scratch("pair");
  fs::create_directories(dir);
  const auto z = RadialFunction::zeros(RadialGrid(3, 64));
  save_function((dir / "u.grid").string(), z);
  save_function((dir / "v.grid").string(), z);
  auto r = run({"pohozaev", "--u", (dir / "u.grid").string(), "--v", (dir / "v.grid").string(), "--p", "5", "--q", "5"});
  REQUIRE(r.status == 0);
  CHECK(r.result()["gap"].get<double>() == 0.0);
  CHECK(r.result()["branch"] == "critical");
  CHECK(r.result()["residual"].get<double>() == 0.0);
}

TEST_CASE("solve-system then pohozaev") {
  const auto dir = scratch("system");
  auto r = run({"solve-system", "--N", "3", "--p", "3", "--q", "2", "--grid", "256", "--out", dir.string()});
  REQUIRE(r.status == 0);
  const auto res = r.result();
  CHECK(res["converged"] == true);
  CHECK(res["r"].get<double>() == doctest::Approx(1.5));
  CHECK(res["breaks"] == false);
  auto p = run({"pohozaev", "--u", (dir / "u.grid").string(), "--v", (dir / "v.grid").string(), "--p", "3", "--q", "2"});
  REQUIRE(p.status == 0);
  CHECK(p.result()["residual"].get<double>() == doctest::Approx(res["pohozaev_residual"].get<double>()));

  auto bad = run({"pohozaev", "--u", (dir / "u.grid").string(), "--v", (dir / "u.grid").string(), "--p", "3", "--q", "2"});
  CHECK(bad.status == cli::exit_status(ErrorCode::NotASolution));
  CHECK(json::parse(bad.err)["error"]["code"] == "NotASolution");
}

TEST_CASE("asymptotics dominated and csv") {
  auto r = run({"asymptotics", "--kind", "dominated", "--N", "3", "--p", "1"});
  REQUIRE(r.status == 0);
  CHECK(r.result()["limit"].get<double>() == doctest::Approx(2.0 / 27));
  CHECK(r.result()["errors"].back().get<double>() < 1e-4);

  const auto dir = scratch("csv");
  fs::create_directories(dir);
  std::ofstream(dir / "d.csv") << "# x\nalpha,cells,level_rad\n1,8,3\n2,8,12\n4,8,48\n8,8,192\n";
  auto c = run({"asymptotics", "--kind", "csv", "--csv", (dir / "d.csv").string()});
  REQUIRE(c.status == 0);
  CHECK(c.result()["fit"]["slope"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("log level and unknown commands") {
  ::setenv("HSL_LOG", "info", 1);
  auto r = run({"classify", "--N", "3", "--p", "2", "--q", "2"});
  ::unsetenv("HSL_LOG");
  CHECK(r.err.find("[hsl]") != std::string::npos);
  CHECK(run({"bogus"}).status == cli::exit_status(ErrorCode::InvalidArgument));
  CHECK(run({"--help"}).status == 0);
}
