#include "coarsefp/homeo.hpp"

#include "coarsefp/error.hpp"

#include <algorithm>

namespace coarsefp {

BigInt floor_of(const Rational& x) {
  const BigInt n = boost::multiprecision::numerator(x);
  const BigInt d = boost::multiprecision::denominator(x);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

std::string to_string(const Rational& x) { return x.str(); }

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw InputError("cannot parse rational '" + text + "'");
  }
}

PLLift::PLLift(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.empty() || xs_.size() != ys_.size()) throw InputError("PL lift needs matching, non-empty breakpoints and values");
  if (xs_.front() != 0) throw InputError("first breakpoint must be 0");
  if (xs_.back() >= 1) throw InputError("breakpoints must lie in [0,1)");
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (xs_[i] <= xs_[i - 1]) throw InputError("breakpoints must increase strictly");
    if (ys_[i] <= ys_[i - 1]) throw InputError("values must increase strictly");
  }
  if (ys_.back() >= ys_.front() + 1) throw InputError("values must stay below f(0) + 1");
  canonicalize();
}

PLLift PLLift::identity() { return PLLift({Rational(0)}, {Rational(0)}); }

PLLift PLLift::translation(const Rational& t) { return PLLift({Rational(0)}, {t}); }

void PLLift::canonicalize() {
  std::vector<Rational> xs{xs_.front()};
  std::vector<Rational> ys{ys_.front()};
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    const Rational& xn = i + 1 < xs_.size() ? xs_[i + 1] : Rational(1);
    const Rational yn = i + 1 < ys_.size() ? ys_[i + 1] : ys_.front() + 1;
    const Rational left = (ys_[i] - ys.back()) / (xs_[i] - xs.back());
    const Rational right = (yn - ys_[i]) / (xn - xs_[i]);
    if (left != right) {
      xs.push_back(xs_[i]);
      ys.push_back(ys_[i]);
    }
  }
  xs_ = std::move(xs);
  ys_ = std::move(ys);
}

Rational PLLift::evaluate(const Rational& x) const {
  const BigInt n = floor_of(x);
  const Rational fr = x - n;
  const auto i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), fr) - xs_.begin()) - 1;
  const Rational x1 = i + 1 < xs_.size() ? xs_[i + 1] : Rational(1);
  const Rational y1 = i + 1 < ys_.size() ? ys_[i + 1] : ys_.front() + 1;
  return ys_[i] + (fr - xs_[i]) * (y1 - ys_[i]) / (x1 - xs_[i]) + n;
}

Rational PLLift::evaluate_inverse(const Rational& y) const {
  const BigInt n = floor_of(y - ys_.front());
  const Rational yy = y - n;
  const auto i = static_cast<std::size_t>(std::upper_bound(ys_.begin(), ys_.end(), yy) - ys_.begin()) - 1;
  const Rational x1 = i + 1 < xs_.size() ? xs_[i + 1] : Rational(1);
  const Rational y1 = i + 1 < ys_.size() ? ys_[i + 1] : ys_.front() + 1;
  return xs_[i] + (yy - ys_[i]) * (x1 - xs_[i]) / (y1 - ys_[i]) + n;
}

std::vector<Rational> PLLift::slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const Rational x1 = i + 1 < xs_.size() ? xs_[i + 1] : Rational(1);
    const Rational y1 = i + 1 < ys_.size() ? ys_[i + 1] : ys_.front() + 1;
    out.push_back((y1 - ys_[i]) / (x1 - xs_[i]));
  }
  return out;
}

namespace {

nlohmann::json pair_json(const Rational& r) {
  return nlohmann::json::array(
      {boost::multiprecision::numerator(r).str(), boost::multiprecision::denominator(r).str()});
}

Rational pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("rational must be a [num, den] pair");
  auto part = [](const nlohmann::json& p) -> std::string {
    if (p.is_string()) return p.get<std::string>();
    if (p.is_number_integer()) return std::to_string(p.get<long long>());
    throw InputError("rational parts must be integers or integer strings");
  };
  return parse_rational(part(j[0]) + "/" + part(j[1]));
}

// Sorted distinct points of [0,1) together with 0.
std::vector<Rational> normalise_points(std::vector<Rational> pts) {
  pts.push_back(Rational(0));
  for (auto& p : pts) p -= floor_of(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

nlohmann::json PLLift::to_json() const {
  nlohmann::json bx = nlohmann::json::array();
  nlohmann::json by = nlohmann::json::array();
  for (const auto& x : xs_) bx.push_back(pair_json(x));
  for (const auto& y : ys_) by.push_back(pair_json(y));
  return {{"breakpoints", bx}, {"values", by}};
}

PLLift PLLift::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values")) {
    throw InputError("PL lift JSON needs 'breakpoints' and 'values'");
  }
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (const auto& p : j.at("breakpoints")) xs.push_back(pair_from_json(p));
  for (const auto& p : j.at("values")) ys.push_back(pair_from_json(p));
  return PLLift(std::move(xs), std::move(ys));
}

PLLift compose(const PLLift& f, const PLLift& g) {
  std::vector<Rational> pts = g.breakpoints();
  for (const auto& u : f.breakpoints()) pts.push_back(g.evaluate_inverse(u));
  pts = normalise_points(std::move(pts));
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (const auto& x : pts) vals.push_back(f.evaluate(g.evaluate(x)));
  return PLLift(std::move(pts), std::move(vals));
}

PLLift invert(const PLLift& f) {
  std::vector<Rational> pts = normalise_points(f.values());
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (const auto& y : pts) vals.push_back(f.evaluate_inverse(y));
  return PLLift(std::move(pts), std::move(vals));
}

PLLift commutator(const PLLift& f, const PLLift& g) {
  return compose(compose(f, g), compose(invert(f), invert(g)));
}

PLLift power(const PLLift& f, long n) {
  PLLift base = n < 0 ? invert(f) : f;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  PLLift out = PLLift::identity();
  while (k > 0) {
    if (k & 1UL) out = compose(out, base);
    base = compose(base, base);
    k >>= 1;
  }
  return out;
}

PLLift lift_a() { return PLLift::translation(Rational(-1, 4)); }

namespace {

Rational b_left(const Rational& x) { return x + 2 * (x - floor_of(x)); }
Rational b_right(const Rational& x) { return x + Rational(2, 3) - Rational(2, 3) * (x - floor_of(x)); }

}  // namespace

PLLift lift_b() {
  const Rational q(1, 4);
  return PLLift({Rational(0), q}, {b_left(Rational(0)), b_left(q)});
}

HomeoCertificate commutator_certificate(int max_n) {
  if (max_n < 1) throw InputError("certificate needs max_n >= 1");
  const PLLift a = lift_a();
  const PLLift b = lift_b();
  const PLLift ab = commutator(a, b);
  const PLLift ba = commutator(invert(b), invert(a));
  const PLLift w = compose(ba, ab);

  HomeoCertificate c;
  c.ab_at_0 = ab.evaluate(Rational(0));
  c.ba_inv_at_half = ba.evaluate(Rational(1, 2));
  c.w_at_0 = w.evaluate(Rational(0));
  c.b_left_at_quarter = b_left(Rational(1, 4));
  c.b_right_at_quarter = b_right(Rational(1, 4));
  c.max_n = max_n;

  std::string failure;
  if (c.ab_at_0 != Rational(1, 2)) failure = "[a,b](0) = " + to_string(c.ab_at_0);
  if (failure.empty() && c.ba_inv_at_half != 1) failure = "[b^-1,a^-1](1/2) = " + to_string(c.ba_inv_at_half);
  if (failure.empty() && c.w_at_0 != 1) failure = "w(0) = " + to_string(c.w_at_0);
  if (failure.empty() && c.b_left_at_quarter != c.b_right_at_quarter) failure = "b is discontinuous at 1/4";
  if (failure.empty() && b.evaluate(Rational(1, 2)) != b_right(Rational(1, 2))) failure = "b disagrees with its formula";

  PLLift wn = PLLift::identity();
  Rational orbit(0);
  for (int n = 1; n <= max_n && failure.empty(); ++n) {
    wn = compose(w, wn);
    orbit = w.evaluate(orbit);
    const Rational value = wn.evaluate(Rational(0));
    c.w_powers_at_0.push_back(value);
    if (value != n || orbit != n) failure = "w^" + std::to_string(n) + "(0) = " + to_string(value);
  }
  if (!failure.empty()) throw InvariantViolation("homeomorphism certificate failed: " + failure);
  c.holds = true;
  return c;
}

nlohmann::json to_json(const HomeoCertificate& c) {
  nlohmann::json powers = nlohmann::json::array();
  for (const auto& p : c.w_powers_at_0) powers.push_back(to_string(p));
  return {{"commutator_ab_at_0", to_string(c.ab_at_0)},
          {"commutator_binv_ainv_at_1/2", to_string(c.ba_inv_at_half)},
          {"w_at_0", to_string(c.w_at_0)},
          {"b_left_at_1/4", to_string(c.b_left_at_quarter)},
          {"b_right_at_1/4", to_string(c.b_right_at_quarter)},
          {"max_n", c.max_n},
          {"w_powers_at_0", powers},
          {"holds", c.holds}};
}

OBCheck ob_bounded_check(const std::vector<PLLift>& lifts, const Rational& bound) {
  OBCheck out;
  out.max_abs = 0;
  for (const auto& f : lifts) out.max_abs = std::max(out.max_abs, Rational(abs(f.evaluate(Rational(0)))));
  out.bounded = out.max_abs <= bound;
  return out;
}

}  // namespace coarsefp
