#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "chiralwalk/csv.hpp"

using namespace chiralwalk;

namespace {

std::vector<std::string> header_of(const std::string& text) {
  return csv::parse(text).front();
}

void check_rectangular(const std::string& text) {
  CHECK(text.find('\r') == std::string::npos);
  CHECK((text.empty() || text.back() == '\n'));
  const auto rows = csv::parse(text.substr(0, text.size() - 1));
  for (const auto& r : rows) CHECK(r.size() == rows.front().size());
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(csv::format_real(0.0) == "0");
  CHECK(csv::format_real(-0.0) == "0");
  CHECK(csv::format_real(1.0) == "1");
  CHECK(csv::format_real(0.1) == "0.1");
  CHECK(csv::format_real(-2.5) == "-2.5");
  CHECK(csv::format_real(std::numbers::pi) == "3.14159265359");
  CHECK(csv::format_real(1e-30) == "1e-30");
  CHECK(csv::format_real(123456789012345.0) == "1.23456789012e+14");
  CHECK(csv::format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(csv::format_real(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("writer enforces row width") {
  std::ostringstream out;
  csv::Writer w(out, {"a", "b"});
  w.cell(1).cell(2.5);
  w.end_row();
  CHECK(out.str() == "a,b\n1,2.5\n");
  w.cell(1);
  CHECK_THROWS_AS(w.end_row(), std::logic_error);
  w.cell(2);
  CHECK_THROWS_AS(w.cell(3), std::logic_error);
}

TEST_CASE("trajectory schema") {
  std::ostringstream out;
  const std::vector<double> ts{0.0, 1.5};
  const std::vector<std::map<int, double>> d{{{1, 1.0}, {2, 0.0}, {3, 0.0}}, {{1, 0.5}, {2, 0.25}, {3, 0.25}}};
  csv::write_trajectory(out, ts, d);
  CHECK(out.str() == "t,n_1,n_2,n_3\n0,1,0,0\n1.5,0.5,0.25,0.25\n");
  CHECK_THROWS(csv::write_trajectory(out, std::vector<double>{0.0}, d));
}

TEST_CASE("snapshot schema") {
  auto g = std::make_shared<const PhasedGraph>(build_y_junction(3, 0.2));
  const QuantumState psi = make_packet(g, WavePacketSpec::gaussian_default(3));
  std::ostringstream out;
  csv::write_snapshot(out, 2.0, psi);
  const std::string text = out.str();
  CHECK(header_of(text) == std::vector<std::string>{"t", "chain", "site", "density", "phase"});
  check_rectangular(text);
  const auto rows = csv::parse(text.substr(0, text.size() - 1));
  REQUIRE(rows.size() == 10);
  CHECK(rows[1][1] == "1");
  CHECK(rows[1][2] == "1");
  CHECK(rows[9][1] == "3");
  CHECK(rows[9][2] == "3");
}

TEST_CASE("sweep schema") {
  TransportRecord a;
  a.theta = 0.5;
  a.analytic = ChainTriple{0.2, 0.4, 0.4};
  TransportRecord b = a;
  b.numeric = ChainTriple{0.1, 0.2, 0.7};
  std::ostringstream out;
  const std::vector<TransportRecord> recs{a, b};
  csv::write_sweep(out, recs);
  CHECK(out.str() ==
        "theta,n1_num,n2_num,n3_num,n1_ana,n2_ana,n3_ana\n"
        "0.5,nan,nan,nan,0.2,0.4,0.4\n"
        "0.5,0.1,0.2,0.7,0.2,0.4,0.4\n");
}

TEST_CASE("spectrum schema") {
  const std::vector<SpectrumRow> rows{{0.0, 1, 2, -1.25, false}, {0.0, 3, 1, 2.5, true}};
  std::ostringstream out;
  csv::write_spectrum(out, rows);
  CHECK(out.str() == "theta,nu,eta,energy,is_edge_state\n0,1,2,-1.25,0\n0,3,1,2.5,1\n");
}

TEST_CASE("greens schema") {
  GreensTrace tr;
  tr.times = {0.0, 2.0};
  tr.rescaled = {1.0, 1.5};
  tr.values = {Complex(1.0, 0.0), Complex(0.0, -0.5)};
  std::ostringstream out;
  csv::write_greens(out, tr);
  const std::string text = out.str();
  CHECK(header_of(text) == std::vector<std::string>{"t", "T", "ReY", "ImY", "absY", "argY"});
  const auto rows = csv::parse(text.substr(0, text.size() - 1));
  REQUIRE(rows.size() == 3);
  CHECK(rows[2][4] == "0.5");
  CHECK(rows[2][5] == csv::format_real(-std::numbers::pi / 2.0));
}

TEST_CASE("parser") {
  const auto rows = csv::parse("a,b\n1,\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == std::vector<std::string>{"1", ""});
  CHECK(csv::parse("").empty());
}
