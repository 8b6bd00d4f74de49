#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "output.hpp"

using namespace stablewave::cli;

TEST_CASE("numbers carry 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");  // trailing zeros dropped as with %.17g
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv layout") {
  Table t{{"z", "value"}, {}};
  t.add({0.0, 0.5});
  t.add({1.0, 1.0 / 3.0});
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "z,value\n0,0.5\n1,0.33333333333333331\n");
  CHECK(os.str().find('\r') == std::string::npos);
}

TEST_CASE("json keeps key order and maps non-finite values to null") {
  Table t{{"b", "a"}, {}};
  t.add({1.0, std::numeric_limits<double>::infinity()});
  std::ostringstream os;
  write_json(os, table_json(t));
  const std::string s = os.str();
  CHECK(s.find("\"b\"") < s.find("\"a\""));
  CHECK(s.find("null") != std::string::npos);
  CHECK(s.find("inf") == std::string::npos);
  CHECK(json_number(std::nan("")).is_null());
}

TEST_CASE("svg has fixed size and one polyline per series") {
  std::vector<Series> series{{"a", {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0}}, {"b", {0.0, 2.0}, {0.0, -1.0}}};
  std::ostringstream os;
  write_svg(os, series, "x", "demo");
  const std::string s = os.str();
  CHECK(s.find("width=\"800\" height=\"500\"") != std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = s.find("<polyline"); pos != std::string::npos; pos = s.find("<polyline", pos + 1)) ++count;
  CHECK(count == 2);
  CHECK(s.find(">-1<") != std::string::npos);  // y minimum label
  CHECK(s.find(">3<") != std::string::npos);   // y maximum label
}
