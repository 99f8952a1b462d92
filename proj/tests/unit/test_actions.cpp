#include "coarsefp/actions.hpp"
#include "coarsefp/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace coarsefp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Matrix rot90() {
  Matrix r(2, 2);
  r << 0, -1, 1, 0;
  return r;
}

// Rotation by pi/2 about (1, 1).
AffineAction rotation() { return AffineAction(2, {{"r", rot90(), vec({2, 0})}}, {"r^4"}); }

AffineAction translation() { return AffineAction(2, {{"t", Matrix::Identity(2, 2), vec({1, 0})}}); }

AffineAction two_generator() {
  Matrix f(3, 3);
  f << 1, 0, 0, 0, -1, 0, 0, 0, 1;
  Matrix r = Matrix::Identity(3, 3);
  r.topLeftCorner(2, 2) = rot90();
  // Both generators fix c = (1, 2, -1): b(s) = c - L(s) c.
  const Vector c = vec({1, 2, -1});
  return AffineAction(3, {{"r", r, c - r * c}, {"f", f, c - f * c}});
}

}  // namespace

TEST(Words, ReduceAndParse) {
  const auto a = rotation();
  EXPECT_TRUE(reduce_word({{0, 1}, {0, -1}, {0, 1}}) == (Word{{0, 1}}));
  EXPECT_EQ(a.parse_word("r^3").size(), 3u);
  EXPECT_EQ(a.parse_word("").size(), 0u);
  EXPECT_EQ(a.format_word(a.parse_word("r r r^-1")), "r r r^-1");
  EXPECT_THROW(a.parse_word("q"), InputError);
  EXPECT_THROW(a.parse_word("r^0"), InputError);
  EXPECT_THROW(a.parse_word("r^x"), InputError);
}

TEST(Words, RotationExamples) {
  const auto a = rotation();
  EXPECT_LE((a.evaluate_word("r", vec({1, 1})) - vec({1, 1})).norm(), 1e-15);
  EXPECT_LE((a.evaluate_word("r", vec({0, 0})) - vec({2, 0})).norm(), 1e-15);
  const Vector x = vec({0.3, -7});
  EXPECT_LE((a.evaluate_word("r^4", x) - x).norm(), 1e-12);
  EXPECT_LE((a.evaluate_word("r r^-1", x) - x).norm(), 1e-12);
  EXPECT_LE((a.evaluate_word("r^-1", a.evaluate_word("r", x)) - x).norm(), 1e-12);
}

TEST(Words, ConcatenationComposes) {
  const auto a = two_generator();
  Rng rng(5);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 200; ++t) {
    const Word g = random_word(a, 6, rng);
    const Word h = random_word(a, 6, rng);
    Word gh = g;
    gh.insert(gh.end(), h.begin(), h.end());
    const Vector x = vec({n01(rng), n01(rng), n01(rng)});
    EXPECT_LE((a.evaluate_word(gh, x) - a.evaluate_word(g, a.evaluate_word(h, x))).norm(), 1e-10);
  }
}

TEST(Action, ValidationRejectsBadInput) {
  Matrix shear = Matrix::Identity(2, 2);
  shear(0, 1) = 1;
  EXPECT_THROW(AffineAction(2, {{"s", shear, vec({0, 0})}}), InputError);
  EXPECT_THROW(AffineAction(2, {{"s", rot90(), vec({0, 0, 0})}}), InputError);
  EXPECT_THROW(AffineAction(2, {{"a b", rot90(), vec({0, 0})}}), InputError);
  EXPECT_THROW(AffineAction(2, {{"s", rot90(), vec({0, 0})}, {"s", rot90(), vec({0, 0})}}), InputError);
  EXPECT_THROW(AffineAction(2, {{"r", rot90(), vec({2, 0})}}, {"r^2"}), InputError);
  EXPECT_THROW(AffineAction(2, {{"s", rot90(), vec({NAN, 0})}}), InputError);
}

TEST(Action, JsonRoundTrip) {
  const auto a = two_generator();
  const auto b = AffineAction::from_json(a.to_json());
  ASSERT_EQ(b.generators().size(), 2u);
  EXPECT_EQ(b.generators()[1].linear, a.generators()[1].linear);
  EXPECT_EQ(b.generators()[1].translation, a.generators()[1].translation);
  EXPECT_THROW(AffineAction::from_json(nlohmann::json{{"dim", 2}}), InputError);
}

TEST(Cocycle, IdentityHoldsOnRandomWords) {
  for (const auto& a : {rotation(), translation(), two_generator()}) {
    const auto c = cocycle_check(a, 500, 11);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.samples, 500);
  }
}

TEST(Displacement, RotationIsDistanceTimesRootTwo) {
  const auto a = rotation();
  for (double r : {0.0, 0.5, 1.0, 3.0}) {
    const Vector x = vec({1 + r, 1});
    EXPECT_NEAR(displacement(a, x), r * std::sqrt(2.0), 1e-12);
  }
  EXPECT_NEAR(displacement(translation(), vec({4, -2})), 1.0, 1e-15);
}

TEST(Displacement, IsTwoLipschitz) {
  for (const auto& a : {rotation(), translation(), two_generator()}) {
    EXPECT_TRUE(lipschitz_check(a, 1000, 3).holds);
  }
}

TEST(Descent, RotationConverges) {
  DescentConfig cfg;
  const auto r = fixed_point_search(rotation(), cfg);
  EXPECT_EQ(r.status, DescentResult::Status::converged);
  EXPECT_LE((r.point - vec({1, 1})).norm(), 1e-6);
  EXPECT_LT(r.displacement, 1e-6);
  EXPECT_LT(r.iterations, 10000);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace[i].displacement, cfg.alpha * r.trace[i - 1].displacement + 1e-15);
    EXPECT_LE(r.trace[i].step, cfg.R * r.trace[i - 1].displacement + 1e-12);
  }
}

TEST(Descent, TwoGeneratorFiniteActionConverges) {
  const auto a = two_generator();
  const auto start = fixed_point_search(a, vec({5, -3, 2}), DescentConfig{});
  EXPECT_EQ(start.status, DescentResult::Status::converged);
  EXPECT_LE(start.displacement, 1e-9);
}

TEST(Descent, TranslationGivesWitness) {
  DescentConfig cfg;
  const auto r = fixed_point_search(translation(), cfg);
  EXPECT_EQ(r.status, DescentResult::Status::witness);
  EXPECT_GE(r.witness_samples, 1000);
  EXPECT_GT(r.witness_min, cfg.alpha * r.displacement);
  EXPECT_NEAR(r.displacement, 1.0, 1e-12);
}

TEST(Descent, ConfigValidation) {
  DescentConfig cfg;
  cfg.alpha = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = DescentConfig{};
  cfg.ball_samples = 10;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = DescentConfig{};
  cfg.max_iters = 1;
  cfg.tol = 1e-300;
  EXPECT_THROW(fixed_point_search(rotation(), vec({50, 50}), cfg), ConvergenceError);
}

TEST(Coboundary, Examples) {
  const auto v = coboundary_solve(rotation());
  ASSERT_TRUE(v.has_value());
  EXPECT_LE((*v - vec({1, 1})).norm(), 1e-9);
  EXPECT_FALSE(coboundary_solve(translation()).has_value());
  const auto w = coboundary_solve(two_generator());
  ASSERT_TRUE(w.has_value());
  EXPECT_LE(displacement(two_generator(), *w), 1e-7);
}

TEST(Gaussian, Examples) {
  const auto e = gaussian_embedding({vec({0, 0}), vec({1, 0})}, 1.0);
  EXPECT_NEAR(e.gram(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e.gram(0, 0), 1.0, 0.0);
  EXPECT_LE(e.residual, 1e-12);
  const auto same = gaussian_embedding({vec({2}), vec({2})}, 3.0);
  EXPECT_NEAR(same.min_eigenvalue, 0.0, 1e-12);
  EXPECT_THROW(gaussian_embedding({vec({0})}, 0.0), InputError);
}

TEST(Gaussian, DistanceIdentityAndPositivity) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  for (double t : {0.1, 1.0, 10.0}) {
    std::vector<Vector> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(vec({n01(rng), n01(rng), n01(rng)}));
    const auto e = gaussian_embedding(pts, t);
    EXPECT_GE(e.min_eigenvalue, -1e-9);
    EXPECT_LE(e.residual, 1e-8);
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double lhs = (e.factor.col(i) - e.factor.col(j)).squaredNorm();
        EXPECT_NEAR(lhs, 2.0 - 2.0 * std::exp(-t * (pts[i] - pts[j]).squaredNorm()), 1e-8);
      }
    }
  }
}
