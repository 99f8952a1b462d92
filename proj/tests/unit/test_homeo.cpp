#include "coarsefp/error.hpp"
#include "coarsefp/homeo.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace coarsefp;

namespace {

Rational q(long p, long d) { return Rational(p, d); }

}  // namespace

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(q(-7, 14)), "-1/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_EQ(floor_of(q(-1, 3)), BigInt(-1));
  EXPECT_EQ(floor_of(q(7, 2)), BigInt(3));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
}

TEST(PLLift, ExamplesForAAndB) {
  const PLLift a = lift_a();
  const PLLift b = lift_b();
  EXPECT_EQ(a.evaluate(0), q(-1, 4));
  EXPECT_EQ(a.evaluate(q(5, 3)), q(5, 3) - q(1, 4));
  EXPECT_EQ(b.evaluate(0), 0);
  EXPECT_EQ(b.evaluate(q(1, 8)), q(3, 8));
  EXPECT_EQ(b.evaluate(q(1, 4)), q(3, 4));
  EXPECT_EQ(b.evaluate(q(1, 2)), q(1, 2) + q(2, 3) - q(1, 3));
  EXPECT_EQ(b.evaluate(1), 1);
  EXPECT_EQ(b.evaluate(q(-3, 4)), b.evaluate(q(1, 4)) - 1);
}

TEST(PLLift, ValidationAndCanonicalForm) {
  EXPECT_THROW(PLLift({q(1, 2)}, {0}), InputError);
  EXPECT_THROW(PLLift({0, q(1, 2)}, {0, 0}), InputError);
  EXPECT_THROW(PLLift({0, q(1, 2)}, {0, q(3, 2)}), InputError);
  EXPECT_THROW(PLLift({0, 1}, {0, q(1, 2)}), InputError);
  const PLLift straight({0, q(1, 3), q(1, 2)}, {q(1, 5), q(1, 5) + q(1, 3), q(1, 5) + q(1, 2)});
  EXPECT_EQ(straight, PLLift::translation(q(1, 5)));
}

TEST(PLLift, InverseIsExact) {
  for (const auto& f : {lift_a(), lift_b(), compose(lift_b(), lift_a()), commutator(lift_a(), lift_b())}) {
    EXPECT_EQ(compose(f, invert(f)), PLLift::identity());
    EXPECT_EQ(compose(invert(f), f), PLLift::identity());
    EXPECT_EQ(invert(f).evaluate(f.evaluate(q(2, 7))), q(2, 7));
    EXPECT_EQ(f.evaluate_inverse(f.evaluate(q(-5, 9))), q(-5, 9));
  }
}

TEST(PLLift, CompositionMatchesPointwise) {
  const PLLift f = compose(lift_b(), compose(lift_a(), lift_b()));
  for (long n = -20; n <= 20; ++n) {
    const Rational x = q(n, 7);
    EXPECT_EQ(f.evaluate(x), lift_b().evaluate(lift_a().evaluate(lift_b().evaluate(x))));
  }
  EXPECT_EQ(power(lift_a(), 4), PLLift::translation(-1));
  EXPECT_EQ(power(lift_b(), -2), invert(compose(lift_b(), lift_b())));
  EXPECT_EQ(power(lift_b(), 0), PLLift::identity());
}

TEST(PLLift, CommutesWithIntegerTranslations) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  std::uniform_int_distribution<long> shift(-5, 5);
  const PLLift w = compose(commutator(invert(lift_b()), invert(lift_a())), commutator(lift_a(), lift_b()));
  for (const auto& f : {lift_a(), lift_b(), w}) {
    for (int t = 0; t < 100; ++t) {
      const Rational x = q(num(rng), den(rng));
      const long n = shift(rng);
      EXPECT_EQ(f.evaluate(x + n), f.evaluate(x) + n);
    }
  }
}

TEST(PLLift, JsonRoundTrip) {
  const PLLift f = commutator(lift_a(), lift_b());
  EXPECT_EQ(PLLift::from_json(f.to_json()), f);
  EXPECT_THROW(PLLift::from_json(nlohmann::json{{"breakpoints", {"0"}}}), InputError);
}

TEST(Certificate, CommutatorIdentities) {
  const auto c = commutator_certificate(100);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.ab_at_0, q(1, 2));
  EXPECT_EQ(c.ba_inv_at_half, 1);
  EXPECT_EQ(c.w_at_0, 1);
  EXPECT_EQ(c.b_left_at_quarter, c.b_right_at_quarter);
  ASSERT_EQ(c.w_powers_at_0.size(), 100u);
  for (int n = 1; n <= 100; ++n) EXPECT_EQ(c.w_powers_at_0[n - 1], n);
  EXPECT_EQ(commutator(lift_a(), lift_b()).evaluate(0), q(1, 2));
}

TEST(OBCheck, BoundedAndUnbounded) {
  const auto small = ob_bounded_check({lift_a(), lift_b(), PLLift::identity()}, 1);
  EXPECT_EQ(small.max_abs, q(1, 4));
  EXPECT_TRUE(small.bounded);
  const PLLift w = compose(commutator(invert(lift_b()), invert(lift_a())), commutator(lift_a(), lift_b()));
  std::vector<PLLift> powers;
  for (long n = 1; n <= 10; ++n) powers.push_back(power(w, n));
  const auto big = ob_bounded_check(powers, 5);
  EXPECT_EQ(big.max_abs, 10);
  EXPECT_FALSE(big.bounded);
  EXPECT_TRUE(ob_bounded_check({}, 0).bounded);
}
