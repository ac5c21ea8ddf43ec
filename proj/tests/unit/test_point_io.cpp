#include <doctest.h>

#include <sstream>

#include "polyinv/errors.hpp"
#include "polyinv/point_io.hpp"

using namespace polyinv;

TEST_CASE("CSV rows with optional value and weight") {
  std::istringstream in("# comment\n1,2,3,4\n\n5,6,7\n");
  const auto c = read_point_csv(in, 2);
  REQUIRE(c.size() == 2);
  CHECK(c.dimension() == 2);
  CHECK(c.values()(0) == 3.0);
  CHECK(c.weights()(0) == 4.0);
  CHECK(c.values()(1) == 7.0);
  CHECK(c.weights()(1) == 1.0);
}

TEST_CASE("CSV dimension defaults to the first row's column count") {
  std::istringstream in("1,2,3\n4,5,6\n");
  const auto c = read_point_csv(in);
  CHECK(c.dimension() == 3);
  CHECK(c.values() == Eigen::VectorXd::Ones(2));
}

TEST_CASE("malformed CSV rows are reported with their line number") {
  std::istringstream bad_number("1,2\n3,abc\n");
  try {
    read_point_csv(bad_number, 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream bad_width("1,2\n1,2,3,4,5\n");
  CHECK_THROWS_AS(read_point_csv(bad_width, 2), ParseError);
  std::istringstream bad_weight("1,2,1,0\n");
  CHECK_THROWS_AS(read_point_csv(bad_weight, 2), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_point_csv(empty), ParseError);
}

TEST_CASE("CSV write then read round trips exactly") {
  Eigen::MatrixXd x(2, 3);
  x << 0.1, -2.0 / 3.0, 1e-17, 3.0, 4.0, 5.5;
  Eigen::VectorXd v(2), w(2);
  v << 1.0 / 7.0, -2.0;
  w << 0.5, 3.0;
  const PointCloud c(x, v, w);
  std::stringstream s;
  write_point_csv(s, c, {"note"});
  CHECK(s.str().rfind("# note\n", 0) == 0);
  const auto back = read_point_csv(s, 3);
  CHECK(back.points() == x);
  CHECK(back.values() == v);
  CHECK(back.weights() == w);
}

TEST_CASE("XYZ reading with mass and unit values") {
  const std::string text = "3\nwater-ish\nO 0 0 0\nH 0.96 0 0\nH -0.24 0.93 0\n";
  std::istringstream a(text);
  const auto m = read_xyz(a);
  CHECK(m.comment == "water-ish");
  CHECK(m.elements == std::vector<std::string>{"O", "H", "H"});
  CHECK(m.cloud.values()(0) == doctest::Approx(15.999));
  CHECK(m.cloud.values()(1) == doctest::Approx(1.008));
  std::istringstream b(text);
  CHECK(read_xyz(b, ValueSource::one).cloud.values() == Eigen::VectorXd::Ones(3));
}

TEST_CASE("XYZ errors") {
  std::istringstream count("x\n\n");
  CHECK_THROWS_AS(read_xyz(count), ParseError);
  std::istringstream short_file("3\nc\nC 0 0 0\n");
  CHECK_THROWS_AS(read_xyz(short_file), ParseError);
  std::istringstream unknown("1\nc\nXx 0 0 0\n");
  try {
    read_xyz(unknown);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream ok("1\nc\nXx 0 0 0\n");
  CHECK_NOTHROW(read_xyz(ok, ValueSource::one));
}

TEST_CASE("XYZ round trip") {
  std::istringstream in("2\nc\nC 0.1 0.2 0.3\nN 1 2 3\n");
  const auto m = read_xyz(in);
  std::stringstream out;
  write_xyz(out, m.elements, m.cloud, "again");
  const auto back = read_xyz(out);
  CHECK(back.comment == "again");
  CHECK(back.cloud.points() == m.cloud.points());
  CHECK(atomic_mass("Cl").value() == 35.45);
  CHECK(!atomic_mass("cl").has_value());
}
