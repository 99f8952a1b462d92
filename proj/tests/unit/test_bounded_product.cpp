#include "coarsefp/bounded_product.hpp"
#include "coarsefp/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace coarsefp;

namespace {

BlockRepresentation z3z3() { return BlockRepresentation(TruncatedProduct(build_family("cyclic:3;cyclic:3"), 2)); }

Vector almost_invariant(const BlockRepresentation& rep, double eps) {
  Vector v = Vector::Ones(rep.dim());
  v[0] += eps;
  return v / v.norm();
}

}  // namespace

TEST(TruncatedProduct, Basics) {
  const TruncatedProduct p(build_family("cyclic:3;cyclic:5;sl2:3"), 2);
  EXPECT_EQ(p.level(), 2);
  EXPECT_EQ(p.generator_count(), 4u);
  EXPECT_NEAR(p.h(), std::min(p.reports()[0].h_gap, p.reports()[1].h_gap), 0.0);
  EXPECT_EQ(p.materialize().order(), 15);
  const auto t = p.generator_tuple(3);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_THROW(TruncatedProduct(build_family("cyclic:3"), 2), InputError);
  EXPECT_THROW(TruncatedProduct(build_family("cyclic:3"), 0), InputError);
}

TEST(BlockRepresentation, Z2SwapMatrix) {
  const BlockRepresentation rep(TruncatedProduct(build_family("cyclic:2"), 1));
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(rep.matrix({1}), swap);
  EXPECT_EQ(rep.matrix({0}), Matrix::Identity(2, 2));
}

TEST(BlockRepresentation, IsAnOrthogonalHomomorphism) {
  const auto rep = z3z3();
  const auto& g = rep.product().components()[0];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Matrix ma = rep.matrix({a, b});
      EXPECT_LE((ma.transpose() * ma - Matrix::Identity(6, 6)).norm(), 1e-14);
      const Matrix prod = rep.matrix({g.mult(a, b), g.mult(b, a)});
      EXPECT_LE((rep.matrix({a, b}) * rep.matrix({b, a}) - prod).norm(), 1e-14);
    }
  }
}

TEST(InvariantProjection, IsAnOrthogonalProjectionOntoFixedVectors) {
  const auto rep = z3z3();
  const InvariantProjection p(rep);
  const Matrix m = p.matrix();
  EXPECT_LE((m * m - m).norm(), 1e-14);
  EXPECT_LE((m - m.transpose()).norm(), 1e-14);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  Vector v(6);
  for (int i = 0; i < 6; ++i) v[i] = n01(rng);
  const Vector pv = p.apply(v);
  EXPECT_LE(sup_displacement(rep, pv), 1e-14);
  EXPECT_LE((pv - m * v).norm(), 1e-14);
}

TEST(GapInequality, RandomProbes) {
  const auto rep = z3z3();
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 1000; ++t) {
    Vector v(rep.dim());
    for (int i = 0; i < rep.dim(); ++i) v[i] = n01(rng);
    EXPECT_TRUE(gap_projection_inequality_check(rep, v).holds);
  }
  const BlockRepresentation zero_gap(TruncatedProduct(build_family("cyclic:4"), 1));
  EXPECT_THROW(gap_projection_inequality_check(zero_gap, Vector::Ones(4)), InputError);
}

TEST(Iteration, StepsStayWithinBoundAndLimitIsInvariant) {
  const auto rep = z3z3();
  const int k0 = minimal_k0(rep.product());
  EXPECT_EQ(k0, 4);
  const Vector v0 = almost_invariant(rep, 0.05);
  ASSERT_LE(sup_displacement(rep, v0), 1.0 / k0);
  const auto shortrun = almost_invariant_iteration(rep, v0, k0, 200, true);
  EXPECT_EQ(shortrun.trace.size(), 200u);
  EXPECT_EQ(shortrun.vectors.size(), 201u);
  const auto r = almost_invariant_iteration(rep, v0, k0, 50000);
  for (const auto& s : r.trace) EXPECT_LE(s.step_norm, s.bound + 1e-10);
  EXPECT_LE(r.final_sup_displacement, 1e-8);
  EXPECT_NEAR(r.final_vector.norm(), 1.0, 1e-12);
}

TEST(Iteration, RejectsBadStart) {
  const auto rep = z3z3();
  const Vector v0 = almost_invariant(rep, 0.05);
  EXPECT_THROW(almost_invariant_iteration(rep, v0, 3, 10), InputError);
  EXPECT_THROW(almost_invariant_iteration(rep, 2.0 * v0, 4, 10), InputError);
  Vector far = Vector::Zero(rep.dim());
  far[0] = 1.0;
  EXPECT_THROW(almost_invariant_iteration(rep, far, 4, 10), InputError);
}

TEST(Kazhdan, CoboundaryActionsRespectTheBound) {
  const auto rep = z3z3();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 10; ++t) {
    Vector w(rep.dim());
    for (int i = 0; i < rep.dim(); ++i) w[i] = n01(rng);
    const auto action = coboundary_product_action(rep, w);
    const Vector v = Vector::Zero(rep.dim());
    const double c = displacement(action, v);
    const auto k = kazhdan_displacement_check(rep, action, c, v, 12, 300, t);
    EXPECT_TRUE(k.holds);
    EXPECT_LT(k.max_ratio, 1.0);
    EXPECT_NEAR(k.epsilon, rep.product().kazhdan_epsilon(), 0.0);
    EXPECT_THROW(kazhdan_displacement_check(rep, action, 0.5 * c, v), InputError);
  }
}

TEST(Kazhdan, RejectsForeignLinearParts) {
  const auto rep = z3z3();
  std::vector<ActionGenerator> gens{{"t", Matrix::Identity(6, 6), Vector::Ones(6)}};
  const AffineAction translation(6, gens);
  EXPECT_THROW(kazhdan_displacement_check(rep, translation, 10.0, Vector::Zero(6)), InputError);
}

TEST(CocycleDemo, SingleMember) {
  const auto g = unbounded_cocycle_demo(build_family("cyclic:64"), 1, {1, 2, 4}, kDefaultOrderCap, 0.05, 0, 200);
  EXPECT_LT(g.max_generator_norm, 1.0);
  EXPECT_LE(g.cocycle_error, 1e-9);
  ASSERT_EQ(g.table.size(), 3u);
  for (const auto& row : g.table) {
    EXPECT_NEAR(row.norm, 2.0 * std::sin(std::numbers::pi * row.m / 64.0), 1e-12);
  }
  EXPECT_TRUE(g.strictly_increasing);
}

TEST(CocycleDemo, GrowthMatchesClosedForm) {
  const auto fam = build_family("cyclic:16,32,64,128,256,512");
  const std::vector<int> lengths{1, 2, 4, 8, 16, 32, 64};
  const auto g = unbounded_cocycle_demo(fam, 6, lengths, kDefaultOrderCap, 0.05, 0, 200);
  EXPECT_LT(g.max_generator_norm, 1.0);
  EXPECT_TRUE(g.schedule_met);
  EXPECT_LE(g.cocycle_error, 1e-9);
  ASSERT_EQ(g.table.size(), lengths.size());
  for (const auto& row : g.table) {
    double expected = 0.0;
    for (int n = 16; n <= 512; n *= 2) expected += 4.0 * std::pow(std::sin(std::numbers::pi * row.m / n), 2);
    EXPECT_NEAR(row.norm, std::sqrt(expected), 1e-9) << "m=" << row.m;
  }
}

TEST(CocycleDemo, RefusesUniformlyGappedFamilies) {
  EXPECT_THROW(unbounded_cocycle_demo(build_family("sl2:3,5"), 2, {1, 2}), InputError);
}
