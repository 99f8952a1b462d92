#include "coarsefp/error.hpp"
#include "coarsefp/groups.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace coarsefp;

TEST(Groups, Orders) {
  EXPECT_EQ(make_trivial().order(), 1);
  EXPECT_EQ(make_cyclic(7).order(), 7);
  EXPECT_EQ(make_dihedral(5).order(), 10);
  EXPECT_EQ(make_symmetric(4).order(), 24);
  EXPECT_EQ(make_symmetric(5).order(), 120);
  for (int p : {3, 5, 7, 11}) EXPECT_EQ(make_sl2(p).order(), p * (p * p - 1));
  EXPECT_EQ(make_product(make_cyclic(3), make_dihedral(4)).order(), 24);
}

TEST(Groups, GeneratorSetsAreSymmetricAndDeduplicated) {
  EXPECT_EQ(make_cyclic(2).gens().size(), 1u);
  EXPECT_EQ(make_cyclic(9).gens().size(), 2u);
  EXPECT_EQ(make_sl2(5).gens().size(), 4u);
  for (const auto& g : {make_cyclic(6), make_dihedral(6), make_symmetric(5), make_sl2(7)}) {
    std::set<int> s(g.gens().begin(), g.gens().end());
    EXPECT_EQ(s.size(), g.gens().size());
    for (int x : g.gens()) EXPECT_TRUE(s.count(g.inv(x)));
    EXPECT_TRUE(g.generates());
  }
}

TEST(Groups, CyclicWordLengths) {
  for (int n : {2, 5, 8, 13}) {
    const auto l = word_lengths(make_cyclic(n));
    for (int k = 0; k < n; ++k) EXPECT_EQ(l[k], std::min(k, n - k));
  }
}

TEST(Groups, WordLengthIsSubadditiveAndSymmetric) {
  for (const auto& g : {make_dihedral(7), make_symmetric(4), make_sl2(5),
                        make_product(make_cyclic(3), make_symmetric(3))}) {
    if (!g.generates()) continue;
    const auto l = word_lengths(g);
    EXPECT_EQ(l[g.identity()], 0);
    for (int a = 0; a < g.order(); ++a) {
      EXPECT_EQ(l[a], l[g.inv(a)]);
      for (int b = 0; b < g.order(); ++b) EXPECT_LE(l[g.mult(a, b)], l[a] + l[b]);
    }
  }
}

TEST(Groups, ProductNeedNotGenerate) {
  const auto g = make_product(make_cyclic(2), make_cyclic(2));
  EXPECT_FALSE(g.generates());
  EXPECT_THROW(word_lengths(g), InputError);
}

TEST(Groups, AdjacencyRowSums) {
  for (const auto& g : {make_cyclic(2), make_cyclic(10), make_dihedral(4), make_sl2(3)}) {
    const Eigen::MatrixXi a = cayley_adjacency(g);
    for (int x = 0; x < g.order(); ++x) {
      EXPECT_EQ(a.row(x).sum(), static_cast<int>(g.gens().size()));
      EXPECT_EQ(a.col(x).sum(), static_cast<int>(g.gens().size()));
    }
    EXPECT_EQ(a, a.transpose());
  }
}

TEST(Groups, ValidateAcceptsBuiltInGroups) {
  for (const auto& g : {make_trivial(), make_cyclic(12), make_dihedral(9), make_symmetric(5), make_sl2(7),
                        make_product(make_dihedral(3), make_cyclic(4))}) {
    EXPECT_NO_THROW(validate_group(g, 1));
  }
}

TEST(Groups, ValidateRejectsNonAssociativeTable) {
  // A Latin square with identity 0 and inverses that is not associative (order 5 loop).
  const std::vector<std::int32_t> table{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                                        3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  const FiniteGroup loop(5, table, {1});
  EXPECT_THROW(validate_group(loop), InvariantViolation);
}

TEST(Groups, ConstructorRejectsBadTables) {
  EXPECT_THROW(FiniteGroup(2, {0, 1, 1}, {1}), InputError);
  EXPECT_THROW(FiniteGroup(2, {0, 1, 1, 2}, {1}), InputError);
  EXPECT_THROW(FiniteGroup(2, {0, 1, 1, 0}, {}), InputError);
  EXPECT_THROW(FiniteGroup(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {1}), InputError);
}

TEST(Groups, BuildGroupSpecs) {
  EXPECT_EQ(build_group("cyclic:6").order(), 6);
  EXPECT_EQ(build_group("trivial").order(), 1);
  EXPECT_EQ(build_group("sl2:5").order(), 120);
  EXPECT_EQ(build_group("prod:cyclic:3,dihedral:4").order(), 24);
  EXPECT_EQ(build_group("prod:cyclic:2,cyclic:3,cyclic:5").order(), 30);
  EXPECT_THROW(build_group("cyclic"), InputError);
  EXPECT_THROW(build_group("cyclic:x"), InputError);
  EXPECT_THROW(build_group("free:2"), InputError);
  EXPECT_THROW(build_group("sl2:9"), InputError);
  EXPECT_THROW(build_group("prod:sl2:13,sl2:11"), ResourceError);
  EXPECT_THROW(build_group("cyclic:100", 50), ResourceError);
}

TEST(Groups, BuildFamilySpecs) {
  const auto f = build_family("cyclic:10..30:10");
  ASSERT_EQ(f.members.size(), 3u);
  EXPECT_EQ(f.members[2].order(), 30);
  const auto g = build_family("sl2:3,5,7");
  ASSERT_EQ(g.members.size(), 3u);
  EXPECT_EQ(g.members[1].order(), 120);
  EXPECT_EQ(g.max_generators(), 4u);
  const auto h = build_family("cyclic:4;dihedral:3..4");
  EXPECT_EQ(h.members.size(), 3u);
  EXPECT_THROW(build_family(""), InputError);
  EXPECT_THROW(build_family("cyclic:9..3"), InputError);
}
