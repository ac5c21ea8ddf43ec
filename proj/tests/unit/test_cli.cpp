#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "oracles.hpp"
#include "polyinv/json_io.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/point_io.hpp"

using namespace polyinv;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("polyinv_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

const char* kMolecule =
    "8\nsynthetic\n"
    "C 0 0 0\nC 1.52 0.05 -0.1\nO 2.1 1.2 0.3\nN -0.7 -1.1 0.5\n"
    "H -0.4 0.9 -0.7\nS 0.4 0.6 1.8\nCl -1.6 0.3 -1.2\nF 0.8 -1.5 1.1\n";

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"features", "--bogus", "x.json"}).code == cli::kUsage);
  CHECK(run({"nosuch"}).code == cli::kUsage);
  CHECK(run({"fit", "a.csv", "--radial", "cubic"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("fit: malformed row names the line") {
  const auto r = run({"fit", "-"}, "1,2\n3,4\n5,oops\n");
  CHECK(r.code == cli::kInput);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"fit", "/nonexistent/file.csv"}).code == cli::kInput);
}

TEST_CASE("fit: circle envelope residual") {
  std::ostringstream csv;
  csv.precision(17);
  for (int k = 0; k < 48; ++k) {
    const double t = 2.0 * M_PI * k / 48.0;
    csv << 5.0 + 3.0 * std::cos(t) << "," << -2.0 + 3.0 * std::sin(t) << "\n";
  }
  const auto r = run({"fit", "-", "--spherical", "--degree", "2"}, csv.str());
  REQUIRE(r.code == 0);
  const auto j = parse_json(r.out);
  CHECK(j["diagnostics"]["residual"].get<double>() < 1e-8);
  CHECK(j["normalization"]["mode"] == "unit-mean-distance");
  CHECK(j["manifest"]["command"] == "fit");
}

TEST_CASE("fit: quadratic samples echo the generator") {
  // symmetric grid: centroid is exactly zero, so coordinates are unchanged
  std::mt19937_64 rng(4);
  const auto p = oracle::random_polynomial(2, 2, rng);
  std::ostringstream csv;
  csv.precision(17);
  for (int i = -3; i <= 3; ++i) {
    for (int k = -3; k <= 3; ++k) {
      Eigen::VectorXd x(2);
      x << 0.25 * i, 0.25 * k;
      csv << x(0) << "," << x(1) << "," << oracle::evaluate(p, x) << "\n";
    }
  }
  const auto r = run({"fit", "-", "--dim", "2", "--degree", "2", "--ridge", "0", "--scale", "none"}, csv.str());
  REQUIRE(r.code == 0);
  const auto q = polynomial_from_json(parse_json(r.out));
  CHECK((vectorize(q) - vectorize(p)).norm() < 1e-10 * vectorize(p).norm());
}

TEST_CASE("rotate: identity matrix and seed determinism") {
  TempDir dir;
  const auto mol = dir.file("m.xyz", kMolecule);
  const auto eye = dir.file("eye.json", "[[1,0,0],[0,1,0],[0,0,1]]");
  const auto r = run({"rotate", mol, "--matrix", eye});
  REQUIRE(r.code == 0);
  std::istringstream rotated(r.out);
  std::istringstream original(kMolecule);
  CHECK(read_xyz(rotated).cloud.points() == read_xyz(original).cloud.points());

  const auto a = run({"rotate", mol, "--seed", "17"});
  const auto b = run({"rotate", mol, "--seed", "17"});
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    for (int i = 0; std::getline(in, line); ++i)
      if (i != 1) out += line + "\n";
    return out;
  };
  CHECK(strip(a.out) == strip(b.out));
  CHECK(a.out.find("\"rotation\"") != std::string::npos);
}

TEST_CASE("rotate: rejects bad matrices and missing seeds") {
  TempDir dir;
  const auto mol = dir.file("m.xyz", kMolecule);
  CHECK(run({"rotate", mol, "--matrix", dir.file("bad.json", "[[1,0,0],[0,1,0],[0,0,2]]")}).code == cli::kInput);
  CHECK(run({"rotate", mol, "--matrix", dir.file("small.json", "[[1,0],[0,1]]")}).code == cli::kInput);
  CHECK(run({"rotate", mol}).code == cli::kUsage);
  CHECK(run({"rotate", mol, "--seed", "1", "--matrix", "x.json"}).code == cli::kUsage);
}

TEST_CASE("features: rotated polynomial gives identical values") {
  TempDir dir;
  std::mt19937_64 rng(5);
  const auto poly = dir.file("p.json", polynomial_to_json(oracle::random_polynomial(3, 3, rng)).dump());
  const auto rot = dir.file("r.json");
  REQUIRE(run({"rotate", poly, "--seed", "99", "-o", rot}).code == 0);
  const auto fa = dir.file("fa.json"), fb = dir.file("fb.json");
  REQUIRE(run({"features", poly, "--mixed", "-o", fa}).code == 0);
  REQUIRE(run({"features", rot, "--mixed", "-o", fb}).code == 0);
  const auto a = features_from_json(parse_json(read_file(fa)));
  const auto b = features_from_json(parse_json(read_file(fb)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(oracle::rel_diff(a.entries[i].value, b.entries[i].value, 1.0) < 1e-9);
  }
  const auto cmp = run({"compare", fa, fb});
  REQUIRE(cmp.code == 0);
  CHECK(std::stod(cmp.out.substr(9)) < 1e-8);
  const auto same = run({"compare", fa, fa});
  CHECK(same.out.rfind("distance 0\n", 0) == 0);
}

TEST_CASE("features: constant polynomial and graph files") {
  TempDir dir;
  const auto c = dir.file("c.json", R"({"n":2,"D":0,"parts":[{"degree":0,"coeffs":[{"exponent":[0,0],"value":3.5}]}]})");
  const auto r = run({"features", c});
  REQUIRE(r.code == 0);
  const auto f = features_from_json(parse_json(r.out));
  REQUIRE(f.size() == 1);
  CHECK(f.entries[0].value == 3.5);

  std::mt19937_64 rng(6);
  const auto p = dir.file("p.json", polynomial_to_json(oracle::random_polynomial(2, 3, rng)).dump());
  const auto good = dir.file("g.txt", "# extra\n3:p,3:p ; 0-1,0-1,0-1\n");
  const auto gr = run({"features", p, "--graphs", good, "--normalize-order"});
  REQUIRE(gr.code == 0);
  CHECK(gr.out.find("graph[3:p,3:p ; 0-1,0-1,0-1]") != std::string::npos);
  const auto bad = dir.file("b.txt", "2:p ; 0-0\n3:p,3:p ; 0-1\n");
  const auto br = run({"features", p, "--graphs", bad});
  CHECK(br.code == cli::kInput);
  CHECK(br.err.find("line 2") != std::string::npos);
}

TEST_CASE("compare: mismatched catalogs are an explicit error") {
  TempDir dir;
  std::mt19937_64 rng(7);
  const auto p = dir.file("p.json", polynomial_to_json(oracle::random_polynomial(2, 2, rng)).dump());
  const auto a = dir.file("a.json"), b = dir.file("b.json");
  REQUIRE(run({"features", p, "-o", a}).code == 0);
  REQUIRE(run({"features", p, "--mixed", "-o", b}).code == 0);
  const auto r = run({"compare", a, b});
  CHECK(r.code == cli::kInput);
  CHECK(!r.err.empty());
}

TEST_CASE("graphs: counts and evaluation") {
  auto count = [](const std::string& out) { return out.substr(out.rfind("# count: ") + 9); };
  CHECK(count(run({"graphs", "2:p"}).out) == "1\n");
  CHECK(count(run({"graphs", "1:p,1:p"}).out) == "1\n");
  CHECK(count(run({"graphs", "3:p,3:p,2:p"}).out) == "3\n");
  const auto odd = run({"graphs", "3:p,2:p"});
  CHECK(odd.code == cli::kUsage);
  CHECK(odd.err.find("odd") != std::string::npos);

  TempDir dir;
  std::mt19937_64 rng(8);
  const auto poly = oracle::random_polynomial(2, 2, rng);
  const auto p = dir.file("p.json", polynomial_to_json(poly).dump());
  const auto r = run({"graphs", "2:p", "--evaluate", p});
  REQUIRE(r.code == 0);
  const double value = std::stod(r.out.substr(r.out.find('\t') + 1));
  CHECK(value == doctest::Approx(quadratic_matrix(poly).trace()).epsilon(1e-14));
}

TEST_CASE("harmonics subcommand") {
  std::ostringstream csv;
  csv.precision(17);
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * M_PI * k / 64.0;
    const double r = 2.0 + 0.5 * std::cos(3.0 * t);
    csv << r * std::cos(t) << "," << r * std::sin(t) << "\n";
  }
  const auto r = run({"harmonics", "-", "--max-l", "3"}, csv.str());
  REQUIRE(r.code == 0);
  const auto h = harmonics_from_json(parse_json(r.out));
  CHECK(h.kind == HarmonicKind::cylindrical);
  CHECK(std::abs(h.coefficient(3, 1)) > 0.4);
}

#ifdef POLYINV_BINARY
TEST_CASE("installed binary reports exit codes") {
  TempDir dir;
  const auto bad = dir.file("bad.csv", "1,2\nx,y\n");
  const auto status = std::system((std::string(POLYINV_BINARY) + " fit " + bad + " 2>/dev/null >/dev/null").c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == cli::kInput);
  const auto ok = std::system((std::string(POLYINV_BINARY) + " graphs 2:p >/dev/null").c_str());
  CHECK(WEXITSTATUS(ok) == 0);
}
#endif
