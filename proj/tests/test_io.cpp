#include <sstream>
#include <string>
#include <variant>

#include <gtest/gtest.h>

#include "heisenberg.hpp"
#include "heisenberg/io.hpp"

namespace heis {
namespace {

using io::json;

TEST(FormatRealTest, RoundTripsExactly) {
  EXPECT_EQ(io::format_real(0.5), "0.5");
  EXPECT_EQ(io::format_real(2.0), "2");
  Sampler rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-20, 20));
    EXPECT_EQ(std::stod(io::format_real(v)), v);
  }
}

TEST(HPointJsonTest, RoundTrip) {
  Sampler rng(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int i = 0; i < 50; ++i) {
      const HPoint p = rng.point_in_box(n, 10.0);
      const json j = io::to_json(p);
      EXPECT_EQ(j.at("n").get<std::size_t>(), n);
      EXPECT_EQ(io::hpoint_from_json(json::parse(j.dump())), p);
      EXPECT_EQ(io::parse_hpoint(j.dump()), p);
    }
  }
}

TEST(HPointJsonTest, RejectsBadInput) {
  EXPECT_THROW(io::hpoint_from_json(json::parse(R"({"n":2,"x":[1],"y":[2],"t":0})")),
               DimensionError);
  EXPECT_THROW(io::hpoint_from_json(json::parse(R"({"x":[1],"t":0})")), std::invalid_argument);
  EXPECT_THROW(io::hpoint_from_json(json::parse(R"({"x":[1],"y":[1,2],"t":0})")),
               DimensionError);
  EXPECT_THROW(io::parse_hpoint("{oops"), std::invalid_argument);
}

TEST(ParseHPointTest, ListForms) {
  EXPECT_EQ(io::parse_hpoint("1,0,2"), HPoint({1.0}, {0.0}, 2.0));
  EXPECT_EQ(io::parse_hpoint("(1, 2, 3, 4, 5)"), HPoint({1.0, 2.0}, {3.0, 4.0}, 5.0));
  EXPECT_EQ(io::parse_hpoint("[0,0,1]"), HPoint({0.0}, {0.0}, 1.0));
  EXPECT_EQ(io::parse_hpoint(" -1.5e-3 , 2 , 0 "), HPoint({-1.5e-3}, {2.0}, 0.0));
  EXPECT_THROW(io::parse_hpoint(""), std::invalid_argument);
  EXPECT_THROW(io::parse_hpoint("1,2"), DimensionError);
  EXPECT_THROW(io::parse_hpoint("1,,2"), std::invalid_argument);
  EXPECT_THROW(io::parse_hpoint("1,x,2"), std::invalid_argument);
}

TEST(GeodesicJsonTest, RoundTrip) {
  Sampler rng(8);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int i = 0; i < 30; ++i) {
      const auto g = connect(rng.point_in_box(n, 2.0), rng.point_in_box(n, 2.0)).front();
      const auto back = io::geodesic_from_json(json::parse(io::to_json(g).dump()));
      for (double f : {0.0, 0.3, 1.0}) {
        const double s = f * parameter_end(g);
        EXPECT_EQ(eval_arc(back, s), eval_arc(g, s));
      }
    }
  }
  const GeodesicArc seg = Segment(HPoint::origin(1), HPoint({1.0}, {2.0}, 0.0));
  const auto j = io::to_json(seg);
  EXPECT_EQ(j.at("kind"), "segment");
  EXPECT_TRUE(std::holds_alternative<Segment>(io::geodesic_from_json(j)));
  EXPECT_THROW(io::geodesic_from_json(json::parse(R"({"kind":"spiral"})")), std::invalid_argument);
}

TEST(ConvexityJsonTest, WitnessRoundTripReplays) {
  const auto rep = scan_for_witness(t_coord_field(), 100, 7);
  const json j = json::parse(io::to_json(rep).dump());
  EXPECT_EQ(j.at("verdict"), "violation");
  EXPECT_EQ(j.at("trial"), 0);
  const auto w = io::witness_from_json(j.at("witness"));
  const auto [lhs, rhs] = replay(t_coord_field(), w);
  EXPECT_NEAR(lhs, rep.witness->lhs, 1e-12);
  EXPECT_NEAR(rhs, rep.witness->rhs, 1e-12);

  const json none = io::to_json(scan_for_witness(constant_field(1.0), 5, 1));
  EXPECT_EQ(none.at("verdict"), "convex-on-samples");
  EXPECT_TRUE(none.at("witness").is_null());
}

TEST(CsvTest, Headers) {
  EXPECT_EQ(io::point_columns(2), ",x1,x2,y1,y2,t");
  EXPECT_EQ(io::bubble_header(1), "theta1,s,x1,y1,t");
  EXPECT_EQ(io::bubble_header(2), "theta1,theta2,s,x1,x2,y1,y2,t");

  std::ostringstream poly;
  io::write_polyline_csv(poly, sample_arc(generating_geodesic(1.0, 1), 3));
  std::istringstream in(poly.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,x1,y1,t");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,0");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(CsvTest, GrowthTable) {
  std::ostringstream os;
  io::write_growth_csv(os, growth_certificate(radius_recursion(5)));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,r_m,r_m_sq,ratio,eq01_margin,pass");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
  EXPECT_EQ(line.substr(line.size() - 3), ",,,");
  std::getline(in, line);
  EXPECT_EQ(line.back(), ',');
  std::getline(in, line);
  EXPECT_EQ(line.substr(line.size() - 5), ",true");
  EXPECT_EQ(std::stod(line.substr(line.find(',') + 1)), radius_recursion(3)[2]);
}

}  // namespace
}  // namespace heis
