#include "coarsefp/error.hpp"
#include "coarsefp/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace coarsefp;

TEST(Spectral, CyclicMatchesCirculantOracle) {
  for (int n : {3, 4, 7, 16, 31}) {
    const auto r = spectral_report(make_cyclic(n));
    EXPECT_LE(oracle::max_sorted_gap(r.eigenvalues, oracle::circulant_spectrum(n)), 1e-10) << n;
  }
}

TEST(Spectral, SmallExamples) {
  const auto z3 = spectral_report(make_cyclic(3));
  ASSERT_EQ(z3.eigenvalues.size(), 3u);
  EXPECT_NEAR(z3.eigenvalues[0], -0.5, 1e-12);
  EXPECT_NEAR(z3.eigenvalues[1], -0.5, 1e-12);
  EXPECT_NEAR(z3.eigenvalues[2], 1.0, 1e-12);
  EXPECT_NEAR(z3.h_gap, 0.5, 1e-12);
  EXPECT_NEAR(z3.one_sided_gap, 1.5, 1e-12);
  EXPECT_NEAR(z3.gamma, 3.0, 1e-10);

  const auto z2 = spectral_report(make_cyclic(2));
  EXPECT_NEAR(z2.eigenvalues.front(), -1.0, 1e-12);
  EXPECT_EQ(z2.h_gap, 0.0);

  const auto t = spectral_report(make_trivial());
  EXPECT_EQ(t.h_gap, 1.0);
  EXPECT_TRUE(std::isinf(t.gamma));
  EXPECT_TRUE(std::isinf(t.kazhdan_lower));
}

TEST(Spectral, EigenvaluesInRangeAndTopIsOne) {
  for (const auto& g : {make_dihedral(5), make_symmetric(4), make_sl2(5), make_cyclic(11)}) {
    const auto r = spectral_report(g);
    EXPECT_EQ(static_cast<int>(r.eigenvalues.size()), g.order());
    EXPECT_NEAR(r.eigenvalues.back(), 1.0, 1e-10);
    EXPECT_GE(r.eigenvalues.front(), -1.0 - 1e-10);
    EXPECT_GE(r.h_gap, 0.0);
    EXPECT_LE(r.h_gap, 1.0);
    EXPECT_NEAR(r.kazhdan_lower, std::sqrt(2.0 * r.gamma / r.generators), 1e-12);
  }
}

TEST(Spectral, EvenCyclicAndBipartiteGraphsHaveZeroTwoSidedGap) {
  EXPECT_EQ(spectral_report(make_cyclic(100)).h_gap, 0.0);
  EXPECT_NEAR(spectral_report(make_cyclic(100)).one_sided_gap, 1.0 - std::cos(2 * std::numbers::pi / 100), 1e-12);
  EXPECT_GT(spectral_report(make_cyclic(101)).h_gap, 0.0);
}

TEST(Spectral, SpectrumRejectsAsymmetric) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(spectrum(m), InputError);
  EXPECT_THROW(spectrum(Matrix(2, 3)), InputError);
}

TEST(Spectral, CapIsEnforced) {
  EXPECT_THROW(spectral_report(make_sl2(5), 100), ResourceError);
}

TEST(Expander, CyclicFamilyIsNotAnExpander) {
  const auto v = expander_check(build_family("cyclic:10..100:10"), 0.05);
  EXPECT_FALSE(v.expander);
  EXPECT_EQ(v.members.size(), 10u);
  EXPECT_NEAR(v.inf_one_sided_gap, 1.0 - std::cos(2 * std::numbers::pi / 100), 1e-12);
}

TEST(Expander, Sl2FamilyHasUniformGap) {
  const auto v = expander_check(build_family("sl2:3,5,7,11"), 0.01, kDefaultOrderCap, 2);
  EXPECT_TRUE(v.expander);
  EXPECT_GT(v.inf_h_gap, 0.01);
  for (std::size_t i = 1; i < v.members.size(); ++i) EXPECT_LT(v.members[i - 1].order, v.members[i].order);
}

TEST(Expander, WorkerCountDoesNotChangeResult) {
  const auto fam = build_family("dihedral:3..8");
  const auto a = expander_check(fam, 0.05, kDefaultOrderCap, 1);
  const auto b = expander_check(fam, 0.05, kDefaultOrderCap, 4);
  ASSERT_EQ(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) EXPECT_EQ(a.members[i].eigenvalues, b.members[i].eigenvalues);
}

TEST(Tensor, ProductSpectrumMatchesDirectProduct) {
  const std::vector<FiniteGroup> gs{make_cyclic(3), make_cyclic(5), make_symmetric(3), make_dihedral(4)};
  for (const auto& a : gs) {
    for (const auto& b : gs) {
      const auto t = tensor_gap_check(a, b);
      const auto direct = spectral_report(make_product(a, b));
      EXPECT_LE(oracle::max_sorted_gap(t.product_spectrum, direct.eigenvalues), 1e-9) << a.label() << " x " << b.label();
      if (!t.degenerate) {
        EXPECT_TRUE(t.contained);
        EXPECT_GE(direct.h_gap + 1e-9, t.epsilon);
      }
    }
  }
}

TEST(Tensor, Z3TimesZ3) {
  const auto t = tensor_gap_check(make_cyclic(3), make_cyclic(3));
  EXPECT_NEAR(t.epsilon, 0.5, 1e-12);
  EXPECT_TRUE(t.contained);
  EXPECT_FALSE(t.degenerate);
  EXPECT_TRUE(tensor_gap_check(make_cyclic(2), make_cyclic(3)).degenerate);
}

TEST(GapCertificate, EquivalentToGamma) {
  for (const auto& g : {make_cyclic(7), make_dihedral(5), make_sl2(3)}) {
    const auto r = spectral_report(g);
    EXPECT_TRUE(gap_certificate(g, r.gamma));
    EXPECT_TRUE(gap_certificate(g, 0.5 * r.gamma));
    EXPECT_FALSE(gap_certificate(g, 1.01 * r.gamma));
  }
  EXPECT_TRUE(gap_certificate(std::vector<double>{0.0, 2.0, 3.0}, 2.0));
  EXPECT_FALSE(gap_certificate(std::vector<double>{0.0, 1.0, 3.0}, 2.0));
  EXPECT_THROW(gap_certificate(std::vector<double>{0.0}, -1.0), InputError);
}

TEST(Laplacian, MatchesAveragingOperator) {
  const auto g = make_symmetric(4);
  const Matrix l = laplacian(g);
  const Matrix m = averaging_operator(g);
  const double s = static_cast<double>(g.gens().size());
  EXPECT_LE((l - s * (Matrix::Identity(g.order(), g.order()) - m)).norm(), 1e-12);
}
