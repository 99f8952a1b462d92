#include "coarsefp/metric.hpp"

#include "coarsefp/error.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace coarsefp {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double comparison_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_comparison_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tolerance must be positive and finite");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

SpaceSpec SpaceSpec::hilbert(int dim) {
  if (dim < 1) throw InputError("space dimension must be >= 1");
  return SpaceSpec(SpaceKind::hilbert, 2.0, dim);
}

SpaceSpec SpaceSpec::lp(double p, int dim) {
  if (dim < 1) throw InputError("space dimension must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("l^p exponent must satisfy 1 < p < inf");
  return SpaceSpec(SpaceKind::lp, p, dim);
}

void SpaceSpec::check_point(const Vector& x) const {
  if (x.size() != dim_) {
    std::ostringstream msg;
    msg << "dimension mismatch: point has " << x.size() << " coordinates, space has " << dim_;
    throw InputError(msg.str());
  }
}

std::string SpaceSpec::describe() const {
  std::ostringstream out;
  if (is_hilbert()) {
    out << "hilbert(" << dim_ << ")";
  } else {
    out << "l" << p_ << "(" << dim_ << ")";
  }
  return out.str();
}

double norm(const SpaceSpec& space, const Vector& v) {
  space.check_point(v);
  if (space.is_hilbert() || space.p() == 2.0) return v.norm();
  // Scale first so large coordinates do not overflow |v_i|^p.
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return scale * std::pow((v.cwiseAbs() / scale).array().pow(space.p()).sum(), 1.0 / space.p());
}

double distance(const SpaceSpec& space, const Vector& x, const Vector& y) {
  space.check_point(x);
  space.check_point(y);
  return norm(space, x - y);
}

Vector midpoint(const SpaceSpec& space, const Vector& x, const Vector& y) {
  space.check_point(x);
  space.check_point(y);
  return 0.5 * (x + y);
}

double modulus_delta(const SpaceSpec& space, double eps) {
  if (!(eps > 0.0) || eps > 2.0) throw InputError("modulus_delta: eps must lie in (0, 2]");
  // Both closed forms are rearranged to avoid cancellation for small eps.
  if (space.is_hilbert()) {
    const double q = eps * eps / 4.0;
    return q / (1.0 + std::sqrt(std::max(0.0, 1.0 - q)));
  }
  const double p = space.p();
  if (p >= 2.0) return -std::expm1(std::log1p(-std::min(1.0, std::pow(eps / 2.0, p))) / p);
  return (p - 1.0) * eps * eps / 8.0;
}

double kappa(const SpaceSpec& space, double eps) {
  if (!(eps > 0.0) || !(eps < 2.0)) throw InputError("kappa: eps must lie in (0, 2)");
  const double delta = modulus_delta(space, eps);
  const double exponent = -std::log(eps / 2.0) * std::log1p(-delta) / std::log(2.0);
  // 1 - exp(x) for x < 0, computed without cancellation.
  const double denominator = -std::expm1(exponent);
  return (2.0 - eps) / denominator;
}

}  // namespace coarsefp
