#include "coarsefp/error.hpp"
#include "coarsefp/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace coarsefp;

TEST(PointsCsv, ParsesCommentsAndBlankLines) {
  const auto pts = parse_points_csv("# header\n0, 1\n\n2.5,-3\n", "x.csv");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1][0], 2.5);
  EXPECT_EQ(pts[1][1], -3.0);
}

TEST(PointsCsv, ErrorsNameTheLine) {
  auto message = [](const std::string& text) {
    try {
      parse_points_csv(text, "f.csv");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("0,0\n1,x\n").find("f.csv:2"), std::string::npos);
  EXPECT_NE(message("0,0\n\n1,2,3\n").find("f.csv:3"), std::string::npos);
  EXPECT_NE(message("0,0,\n").find("f.csv:1"), std::string::npos);
  EXPECT_NE(message("1,inf\n").find("f.csv:1"), std::string::npos);
  EXPECT_NE(message("# only\n").find("no points"), std::string::npos);
}

TEST(PointsJson, BothShapes) {
  EXPECT_EQ(parse_points_json(nlohmann::json::parse("[[1,2],[3,4]]")).size(), 2u);
  EXPECT_EQ(parse_points_json(nlohmann::json::parse(R"({"points": [[1]]})")).size(), 1u);
  EXPECT_THROW(parse_points_json(nlohmann::json::parse("[[1,2],[3]]")), InputError);
  EXPECT_THROW(parse_points_json(nlohmann::json::parse("[]")), InputError);
  EXPECT_THROW(parse_points_json(nlohmann::json::parse(R"([["a"]])")), InputError);
}

TEST(Files, MissingFileIsAnInputError) {
  EXPECT_THROW(read_text_file("/nonexistent/nowhere.csv"), InputError);
  EXPECT_THROW(read_points("/nonexistent/nowhere.json"), InputError);
}

TEST(GroupJson, RoundTrip) {
  for (const auto& g : {make_cyclic(5), make_dihedral(4), make_product(make_cyclic(2), make_cyclic(3))}) {
    const auto back = group_from_json(group_to_json(g));
    EXPECT_EQ(back.order(), g.order());
    EXPECT_EQ(back.table(), g.table());
    EXPECT_EQ(back.gens(), g.gens());
    EXPECT_EQ(back.label(), g.label());
  }
  const auto nested = group_from_json(nlohmann::json::parse(R"({"order":2,"mult":[[0,1],[1,0]],"gens":[1]})"));
  EXPECT_EQ(nested.order(), 2);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"order":2})")), InputError);
}

TEST(SpectrumCsv, FullPrecision) {
  std::ostringstream out;
  write_spectrum_csv(out, {0.1, -1.0});
  EXPECT_EQ(out.str(), "0.10000000000000001\n-1\n");
}
