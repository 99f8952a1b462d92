#pragma once

#include <Eigen/Dense>

#include <string>

namespace coarsefp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Global comparison tolerance used where an operation does not take one explicitly.
double comparison_tolerance();
void set_comparison_tolerance(double tol);

enum class SpaceKind { hilbert, lp };

/// A finite-dimensional uniformly convex norm space: Euclidean or l^p with 1 < p < inf.
class SpaceSpec {
 public:
  static SpaceSpec hilbert(int dim);
  static SpaceSpec lp(double p, int dim);

  SpaceKind kind() const { return kind_; }
  /// Exponent of the norm; 2 for Hilbert space.
  double p() const { return p_; }
  int dim() const { return dim_; }
  bool is_hilbert() const { return kind_ == SpaceKind::hilbert; }

  /// Throws InputError unless `x` has this space's dimension.
  void check_point(const Vector& x) const;

  std::string describe() const;

  bool operator==(const SpaceSpec&) const = default;

 private:
  SpaceSpec(SpaceKind kind, double p, int dim) : kind_(kind), p_(p), dim_(dim) {}

  SpaceKind kind_;
  double p_;
  int dim_;
};

double norm(const SpaceSpec& space, const Vector& v);
double distance(const SpaceSpec& space, const Vector& x, const Vector& y);
Vector midpoint(const SpaceSpec& space, const Vector& x, const Vector& y);

/// Modulus of uniform convexity delta_eps, for 0 < eps <= 2.
///
/// Hilbert: 1 - sqrt(1 - eps^2/4). l^p with p >= 2: 1 - (1 - (eps/2)^p)^(1/p), from Clarkson's
/// inequality. For 1 < p < 2 the sharp modulus has no closed form and the smaller valid bound
/// (p-1) eps^2 / 8 is returned instead.
double modulus_delta(const SpaceSpec& space, double eps);

/// Stability constant kappa_eps of the centre map for 0 < eps < 2:
/// (2 - eps) / (1 - exp(-log(eps/2) log(1 - delta_eps) / log 2)).
double kappa(const SpaceSpec& space, double eps);

}  // namespace coarsefp
