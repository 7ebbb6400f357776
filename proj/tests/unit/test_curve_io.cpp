#include <gtest/gtest.h>

#include <sstream>

#include "gim/curve_io.hpp"
#include "oracles.hpp"

using namespace gim;

TEST(CurveJson, RoundTripIsExact) {
  for (const auto& kind : gim::testing::all_backends()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      auto c = random_probe_curve(kind, rng);
      if (seed % 2) c.boundary = Boundary::clamped;
      const auto back = parse_curve_json(curve_to_json(c));
      EXPECT_EQ(back.kind(), c.kind());
      EXPECT_EQ(back.boundary, c.boundary);
      ASSERT_EQ(back.size(), c.size());
      for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(back.points[i].coords(), c.points[i].coords());
    }
  }
}

TEST(CurveJson, AwkwardDoubles) {
  CurveSequence c = gim::testing::scalar_curve({0.1, 1.0 / 3, -2.5e-300, 1e300, 5e-324}, Boundary::clamped);
  const auto back = parse_curve_json(curve_to_json(c));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back.points[i].coords()[0], c.points[i].coords()[0]);
}

TEST(CurveJson, ValidationNamesTheFirstOffender) {
  const char* text = R"({"manifold": "sphere", "dim_or_size": 3, "boundary": "periodic",
    "points": [[1, 0, 0], [0, 1, 0], [0, 0.9, 0], [0, 0, 2]]})";
  try {
    parse_curve_json(text);
    FAIL();
  } catch (const InvalidPoint& e) {
    EXPECT_NE(std::string(e.what()).find("point 2"), std::string::npos) << e.what();
  }
}

TEST(CurveJson, FormatErrors) {
  EXPECT_THROW(parse_curve_json("{"), FormatError);
  EXPECT_THROW(parse_curve_json("[1, 2]"), FormatError);
  EXPECT_THROW(parse_curve_json(R"({"manifold": "sphere", "boundary": "periodic", "points": []})"), FormatError);
  EXPECT_THROW(parse_curve_json(R"({"manifold": "sphere", "dim_or_size": 3, "boundary": "open", "points": []})"),
               ValidationError);
  EXPECT_THROW(parse_curve_json(R"({"manifold": "torus", "dim_or_size": 3, "boundary": "periodic", "points": []})"),
               UnknownManifold);
  EXPECT_THROW(parse_curve_json(R"({"manifold": "euclidean", "dim_or_size": 1, "boundary": "periodic",
                                    "points": [[0], ["x"]]})"),
               InvalidPoint);
  EXPECT_THROW(parse_curve_json(R"({"manifold": "euclidean", "dim_or_size": 1, "boundary": "periodic",
                                    "points": [[0]]})"),
               CurveTooShort);
}

TEST(MaskJson, BuildsScheme) {
  const auto cfg = parse_mask_json(R"({"coefficients": [0.25, 0.75, 0.75, 0.25], "offset": -2, "name": "chaikin",
                                       "mu": 0.5})");
  const auto s = scheme_from_config(cfg);
  EXPECT_EQ(s.name, "chaikin");
  EXPECT_EQ(*s.mu, 0.5);
  EXPECT_EQ(s.even_rule.point_offsets, builtin("bspline2").even_rule.point_offsets);
  EXPECT_THROW(scheme_from_config(parse_mask_json(R"({"coefficients": [0.3, 0.7, 0.6], "offset": 0})")),
               MaskRowSumViolation);
  EXPECT_THROW(parse_mask_json(R"({"offset": 0})"), FormatError);
}

TEST(DiagnosticsCsv, HeaderAndRows) {
  DiagnosticsReport rep;
  rep.levels.push_back({0, 1.5, 0.5, 0.25, 0.1});
  rep.levels.push_back({1, 0.75, NAN, NAN, NAN});
  std::ostringstream os;
  write_diagnostics_csv(os, rep);
  EXPECT_EQ(os.str(),
            "level,delta,contractivity_ratio,max_displacement_ratio,cauchy_gap\n"
            "0,1.5,0.5,0.25,0.10000000000000001\n"
            "1,0.75,nan,nan,nan\n");
}
