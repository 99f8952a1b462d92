#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <nlohmann/json.hpp>

namespace coarsefp {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

BigInt floor_of(const Rational& x);
/// "p/q", or "p" for integers.
std::string to_string(const Rational& x);
/// Accepts "p/q" or "p".
Rational parse_rational(const std::string& text);

/// A piecewise linear lift f of a circle homeomorphism: f(x + n) = f(x) + n.
///
/// f is given on [0, 1) by breakpoints 0 = x_0 < ... < x_k < 1 and values f(x_i), with
/// f(1) = f(0) + 1 implied. Stored in canonical form: no interior breakpoint between two
/// segments of equal slope, so equality is structural.
class PLLift {
 public:
  /// Throws InputError unless breakpoints start at 0, increase strictly and stay below 1, and the
  /// values increase strictly with f(x_k) < f(0) + 1.
  PLLift(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static PLLift identity();
  static PLLift translation(const Rational& t);

  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }

  Rational evaluate(const Rational& x) const;
  Rational evaluate_inverse(const Rational& y) const;
  /// Slopes of the segments [x_i, x_{i+1}], the last one ending at 1.
  std::vector<Rational> slopes() const;

  bool operator==(const PLLift&) const = default;

  nlohmann::json to_json() const;
  static PLLift from_json(const nlohmann::json& j);

 private:
  void canonicalize();

  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// f o g.
PLLift compose(const PLLift& f, const PLLift& g);
PLLift invert(const PLLift& f);
/// [f, g] = f g f^-1 g^-1.
PLLift commutator(const PLLift& f, const PLLift& g);
/// f^n for any integer n.
PLLift power(const PLLift& f, long n);

/// a(x) = x - 1/4.
PLLift lift_a();
/// b(x) = x + 2{x} for {x} <= 1/4 and x + 2/3 - (2/3){x} otherwise.
PLLift lift_b();

struct HomeoCertificate {
  Rational ab_at_0;            // [a,b](0)
  Rational ba_inv_at_half;     // [b^-1,a^-1](1/2)
  Rational w_at_0;             // w(0), w = [b^-1,a^-1][a,b]
  Rational b_left_at_quarter;  // x + 2{x} at x = 1/4
  Rational b_right_at_quarter; // x + 2/3 - (2/3){x} at x = 1/4
  int max_n = 0;
  std::vector<Rational> w_powers_at_0;  // w^n(0), n = 1..max_n
  bool holds = false;
};
/// Builds a, b exactly and checks [a,b](0) = 1/2, [b^-1,a^-1](1/2) = 1, continuity of b at 1/4 and
/// w^n(0) = n for n = 1..max_n, with w^n both as a composed lift and as n-fold evaluation.
/// Throws InvariantViolation if any of these fails.
HomeoCertificate commutator_certificate(int max_n = 100);
nlohmann::json to_json(const HomeoCertificate& c);

struct OBCheck {
  Rational max_abs;  // max |f(0)| over the list; 0 for an empty list
  bool bounded = false;
};
/// A set of lifts is bounded exactly when {f(0)} is; compares max |f(0)| with `bound`.
OBCheck ob_bounded_check(const std::vector<PLLift>& lifts, const Rational& bound);

}  // namespace coarsefp
