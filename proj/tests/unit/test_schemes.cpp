#include <gtest/gtest.h>

#include "gim/analysis.hpp"
#include "oracles.hpp"

using namespace gim;
using gim::testing::scalar_curve;

namespace {

void expect_rule(const GimRule& r, std::vector<int> offsets, std::vector<double> weights, bool symmetric) {
  EXPECT_EQ(r.point_offsets, offsets);
  ASSERT_EQ(r.weights.size(), weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) EXPECT_NEAR(r.weights[i], weights[i], 1e-15) << i;
  EXPECT_EQ(r.symmetric, symmetric);
}

double gap(const ManifoldPoint& a, const ManifoldPoint& b) {
  if (a.kind().tag() == ManifoldTag::rotations3d) {
    return std::min((a.coords() - b.coords()).cwiseAbs().maxCoeff(), (a.coords() + b.coords()).cwiseAbs().maxCoeff());
  }
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff();
}

CurveSequence probe_curve(const ManifoldKind& kind, std::uint64_t seed) {
  Rng rng(seed);
  return random_probe_curve(kind, rng);
}

}  // namespace

TEST(Adapt, FourPointRules) {
  const GimScheme s = adapt({{-1.0 / 16, 0, 9.0 / 16, 1, 9.0 / 16, 0, -1.0 / 16}, -3});
  EXPECT_TRUE(s.interpolatory);
  EXPECT_TRUE(s.even_rule.is_identity());
  expect_rule(s.odd_rule, {-1, 0, 1, 2}, {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16}, true);
}

TEST(Adapt, QuarticRules) {
  const GimScheme s = adapt({{1.0 / 16, 5.0 / 16, 10.0 / 16, 10.0 / 16, 5.0 / 16, 1.0 / 16}, -3});
  EXPECT_FALSE(s.interpolatory);
  expect_rule(s.even_rule, {0, 1, -1}, {10.0 / 16, 5.0 / 16, 1.0 / 16}, false);
  expect_rule(s.odd_rule, {1, 0, 2}, {10.0 / 16, 5.0 / 16, 1.0 / 16}, false);
}

TEST(Adapt, RowSumViolation) {
  EXPECT_THROW(adapt({{0.45, 0.5, 0.45, 0.5}, -2}), MaskRowSumViolation);
  EXPECT_THROW(adapt({{0.5, 1.0, 0.4}, -1}), MaskRowSumViolation);
  EXPECT_THROW(adapt({{}, 0}), MaskRowSumViolation);
}

TEST(Builtin, ContractivityFactors) {
  EXPECT_DOUBLE_EQ(*builtin("fourpoint", {1.0 / 16}).mu, 0.75);
  EXPECT_DOUBLE_EQ(*builtin("fourpoint", {0.0}).mu, 0.5);
  EXPECT_DOUBLE_EQ(*builtin("sixpoint_dd").mu, 0.9844);
  EXPECT_DOUBLE_EQ(*builtin("bspline1").mu, 0.5);
  EXPECT_DOUBLE_EQ(*builtin("bspline2").mu, 0.5);
  EXPECT_DOUBLE_EQ(*builtin("bspline3").mu, 0.5);
  EXPECT_DOUBLE_EQ(*builtin("bspline4").mu, 5.0 / 6);
}

TEST(Builtin, WrittenRules) {
  expect_rule(builtin("sixpoint_dd").odd_rule, {-2, -1, 0, 1, 2, 3},
              {3.0 / 256, -25.0 / 256, 150.0 / 256, 150.0 / 256, -25.0 / 256, 3.0 / 256}, true);
  EXPECT_TRUE(builtin("sixpoint_dd").even_rule.is_identity());
  EXPECT_TRUE(builtin("bspline1").even_rule.is_identity());
  expect_rule(builtin("bspline1").odd_rule, {0, 1}, {0.5, 0.5}, true);
  expect_rule(builtin("bspline2").even_rule, {0, 1}, {0.75, 0.25}, false);
  expect_rule(builtin("bspline2").odd_rule, {1, 0}, {0.75, 0.25}, false);
  expect_rule(builtin("bspline3").even_rule, {-1, 0, 1}, {1.0 / 8, 3.0 / 4, 1.0 / 8}, true);
  expect_rule(builtin("bspline3").odd_rule, {0, 1}, {0.5, 0.5}, true);
  expect_rule(builtin("bspline4").even_rule, {0, 1, -1}, {10.0 / 16, 5.0 / 16, 1.0 / 16}, false);
}

TEST(Builtin, Errors) {
  EXPECT_THROW(builtin("eightpoint"), UnknownScheme);
  EXPECT_THROW(builtin("fourpoint", {0.125}), OmegaOutOfRange);
  EXPECT_THROW(builtin("fourpoint", {-0.01}), OmegaOutOfRange);
  EXPECT_THROW(builtin("fourpoint", {0.2}), OmegaOutOfRange);
  EXPECT_EQ(catalog().size(), 6u);
}

TEST(Builtin, QuarticPaperForms) {
  // Even rule M_{15/16}(p_{i-1}, M_{1/3}(p_i, p_{i+1})), odd rule mirrored.
  const GimScheme s = builtin("bspline4");
  Rng rng(4);
  for (const auto& kind : gim::testing::all_backends()) {
    const auto c = gim::testing::random_cluster(kind, rng, 4, 0.4);  // p_{i-1}, p_i, p_{i+1}, p_{i+2}
    const std::vector<ManifoldPoint> even{c[1], c[2], c[0]};
    const auto e = evaluate_rule(s.even_rule, even);
    EXPECT_LT(gap(e, geodesic_point(c[0], geodesic_point(c[1], c[2], 1.0 / 3), 15.0 / 16)), 1e-12);
    const std::vector<ManifoldPoint> odd{c[2], c[1], c[3]};
    const auto o = evaluate_rule(s.odd_rule, odd);
    EXPECT_LT(gap(o, geodesic_point(c[3], geodesic_point(c[2], c[1], 1.0 / 3), 15.0 / 16)), 1e-12);
  }
}

TEST(RefineOnce, BsplineTwoOnScalars) {
  const auto out = refine_once(builtin("bspline2"), scalar_curve({0, 1}, Boundary::periodic));
  EXPECT_DOUBLE_EQ(out.points[0].coords()[0], 0.25);
  EXPECT_DOUBLE_EQ(out.points[1].coords()[0], 0.75);
}

TEST(RefineOnce, FourPointSpike) {
  const auto out = refine_once(builtin("fourpoint"), scalar_curve({0, 0, 1, 0, 0}, Boundary::clamped));
  ASSERT_EQ(out.size(), 9u);
  EXPECT_DOUBLE_EQ(out.points[3].coords()[0], 9.0 / 16);
  EXPECT_DOUBLE_EQ(out.points[5].coords()[0], 9.0 / 16);
  EXPECT_DOUBLE_EQ(out.points[1].coords()[0], -1.0 / 16);
  EXPECT_DOUBLE_EQ(out.points[4].coords()[0], 1.0);
}

TEST(RefineOnce, InterpolatoryEvenEntriesBitIdentical) {
  for (const char* name : {"fourpoint", "sixpoint_dd", "bspline1"}) {
    for (const auto& kind : gim::testing::all_backends()) {
      const auto c = probe_curve(kind, 17);
      const auto out = refine_once(builtin(name), c);
      for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(out.points[2 * j].coords(), c.points[j].coords());
    }
  }
}

TEST(RefineOnce, BsplineOneInsertsArcMidpoints) {
  const auto S = ManifoldKind::sphere(3);
  CurveSequence sq{{}, Boundary::periodic};
  for (auto [x, y] : std::vector<std::pair<double, double>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) {
    sq.points.push_back(gim::testing::point(S, {x, y, 0}));
  }
  const auto out = refine_once(builtin("bspline1"), sq);
  ASSERT_EQ(out.size(), 8u);
  const double h = 1 / std::sqrt(2.0);
  const double expected[4][2] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(out.points[2 * j + 1].coords()[0], expected[j][0], 1e-15);
    EXPECT_NEAR(out.points[2 * j + 1].coords()[1], expected[j][1], 1e-15);
  }
}

TEST(Refine, LevelsAndLengths) {
  const auto c = probe_curve(ManifoldKind::sphere(3), 3);
  const auto s = builtin("bspline3");
  EXPECT_EQ(refine(s, c, 0).points.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(refine(s, c, 0).points[i].coords(), c.points[i].coords());
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(refine(s, c, k).size(), c.size() << k);
  EXPECT_THROW(refine(s, c, -1), ParameterOutOfRange);

  auto open = c;
  open.boundary = Boundary::clamped;
  EXPECT_EQ(refine(s, open, 2).size(), 4 * (c.size() - 1) + 1);
}

TEST(Refine, LinearOracleThreeLevels) {
  Rng rng(21);
  std::normal_distribution<double> g;
  for (const auto& name : gim::testing::builtin_names()) {
    const auto s = builtin(name);
    for (int dim : {1, 3}) {
      gim::testing::Samples f;
      for (int i = 0; i < 13; ++i) {
        Eigen::VectorXd v(dim);
        for (int c = 0; c < dim; ++c) v[c] = g(rng);
        f.push_back(v);
      }
      const auto got = refine(s, gim::testing::euclidean_curve(f, Boundary::periodic), 3);
      const auto ref = gim::testing::linear_subdivide_periodic(s.mask.coefficients, s.mask.offset, f, 3);
      EXPECT_LT(gim::testing::max_abs_diff(gim::testing::coords_of(got), ref), 1e-12) << name << " dim " << dim;

      const auto open = refine_once(s, gim::testing::euclidean_curve(f, Boundary::clamped));
      const auto open_ref = gim::testing::linear_subdivide_clamped(s.mask.coefficients, s.mask.offset, f);
      EXPECT_LT(gim::testing::max_abs_diff(gim::testing::coords_of(open), open_ref), 1e-12) << name;
    }
  }
}

TEST(Refine, LinearReproductionRandomDims) {
  Rng rng(31);
  std::uniform_real_distribution<double> u(-5, 5);
  for (const auto& name : gim::testing::builtin_names()) {
    const auto s = builtin(name);
    for (int dim = 1; dim <= 3; ++dim) {
      gim::testing::Samples f;
      for (int i = 0; i < 9; ++i) {
        Eigen::VectorXd v(dim);
        for (int c = 0; c < dim; ++c) v[c] = u(rng);
        f.push_back(v);
      }
      const auto got = refine_once(s, gim::testing::euclidean_curve(f, Boundary::periodic));
      const auto ref = gim::testing::linear_subdivide_periodic(s.mask.coefficients, s.mask.offset, f);
      EXPECT_LT(gim::testing::max_abs_diff(gim::testing::coords_of(got), ref), 1e-12) << name << " dim " << dim;
    }
  }
}

TEST(Refine, ParallelMatchesSerial) {
  for (const auto& name : gim::testing::builtin_names()) {
    for (const auto& kind : gim::testing::all_backends()) {
      const auto c = probe_curve(kind, 5);
      const auto a = refine(builtin(name), c, 3);
      const auto b = serial::refine(builtin(name), c, 3);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.points[i].coords(), b.points[i].coords());
    }
  }
}

TEST(Refine, Errors) {
  const auto s6 = builtin("sixpoint_dd");
  EXPECT_THROW(refine_once(s6, scalar_curve({0, 1, 2, 3, 4}, Boundary::clamped)), CurveTooShort);
  EXPECT_NO_THROW(refine_once(s6, scalar_curve({0, 1, 2, 3, 4, 5}, Boundary::clamped)));
  EXPECT_THROW(refine_once(s6, scalar_curve({0}, Boundary::periodic)), CurveTooShort);

  CurveSequence mixed = scalar_curve({0, 1}, Boundary::periodic);
  mixed.points.push_back(gim::testing::point(ManifoldKind::euclidean(2), {0, 0}));
  EXPECT_THROW(refine_once(s6, mixed), KindMismatch);

  // p_1 -> p_2 is antipodal; bspline1 fails on output entry 3.
  const auto S = ManifoldKind::sphere(3);
  CurveSequence bad{{gim::testing::point(S, {1, 0, 0}), gim::testing::point(S, {0, 1, 0}),
                     gim::testing::point(S, {0, -1, 0})},
                    Boundary::periodic};
  for (bool parallel : {true, false}) {
    try {
      parallel ? refine(builtin("bspline1"), bad, 3) : serial::refine(builtin("bspline1"), bad, 3);
      FAIL() << "expected RefineError";
    } catch (const RefineError& e) {
      EXPECT_EQ(e.level(), 1);
      EXPECT_EQ(e.index(), 3);
      EXPECT_EQ(e.cause(), "AntipodalPoints");
    }
  }
  try {
    refine_once(builtin("bspline1"), bad);
    FAIL() << "expected RefineError";
  } catch (const RefineError& e) {
    EXPECT_EQ(e.level(), 0);
  }
}

// ---- properties ----

class SchemeProperty : public ::testing::TestWithParam<std::tuple<std::string, ManifoldKind>> {
protected:
  GimScheme scheme() const { return builtin(std::get<0>(GetParam())); }
  ManifoldKind kind() const { return std::get<1>(GetParam()); }
};

TEST_P(SchemeProperty, SymmetryEquivariance) {
  const auto s = scheme();
  const long c = 2L * s.mask.offset + static_cast<long>(s.mask.coefficients.size()) - 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = probe_curve(kind(), 100 + seed);
    auto q = p;
    std::reverse(q.points.begin(), q.points.end());
    const auto tp = refine_once(s, p);
    const auto tq = refine_once(s, q);
    const long n2 = static_cast<long>(tp.size());
    for (long m = 0; m < n2; ++m) {
      const long mirrored = (((c + n2 - 2 - m) % n2) + n2) % n2;
      ASSERT_LT(gap(tq.points[static_cast<std::size_t>(m)], tp.points[static_cast<std::size_t>(mirrored)]), 1e-10)
          << "m=" << m;
    }
  }
}

TEST_P(SchemeProperty, PerStepContractivity) {
  const auto s = scheme();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = probe_curve(kind(), 500 + seed);
    EXPECT_LE(delta(refine_once(s, p)), *s.mu * delta(p) + 1e-9);
  }
}

TEST_P(SchemeProperty, DisplacementSafe) {
  const auto s = scheme();
  const double C = s.displacement_bound();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = probe_curve(kind(), 900 + seed);
    const auto tp = refine_once(s, p);
    const double d = delta(p);
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_LE(distance(tp.points[2 * j], p.points[j]), C * d + 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(AllSchemesAllBackends, SchemeProperty,
                         ::testing::Combine(::testing::ValuesIn(gim::testing::builtin_names()),
                                            ::testing::ValuesIn(gim::testing::all_backends())),
                         [](const auto& info) {
                           return std::get<0>(info.param) + "_" + std::get<1>(info.param).tag_name();
                         });
