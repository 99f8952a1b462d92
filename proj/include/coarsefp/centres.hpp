#pragma once

#include "coarsefp/metric.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace coarsefp {

/// A non-empty finite point set in a uniformly convex norm space.
class BoundedSet {
 public:
  BoundedSet(SpaceSpec space, std::vector<Vector> points);

  const SpaceSpec& space() const { return space_; }
  const std::vector<Vector>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// True when every point of `other` coincides (to 1e-12) with a point of this set.
  bool contains_all(const BoundedSet& other) const;

 private:
  SpaceSpec space_;
  std::vector<Vector> points_;
};

struct CentreResult {
  Vector centre;
  double rho = 0.0;
  int iterations = 0;
  /// Hilbert solver: spread of the support distances. l^p solver: final barrier duality gap.
  double residual = 0.0;
  /// Number of points that determine the centre (Hilbert solver only, 0 otherwise).
  std::size_t support_size = 0;
};

/// r(x) = max_a |a x|.
double radius_at(const BoundedSet& set, const Vector& x);

/// Chebyshev centre Z(A) and radius rho(A).
///
/// In Hilbert space the centre is computed exactly (up to rounding) by a support-set pivoting
/// method: the centre is kept equidistant from an affinely independent support set and walked
/// toward that set's circumcentre, adding points that reach the sphere and dropping points with
/// negative barycentric weight. In l^p the convex program min t s.t. |x - a|_p^p <= t is solved by a
/// log-barrier Newton method. Throws ConvergenceError when the iteration cap is hit.
CentreResult chebyshev_centre(const BoundedSet& set, double tol = 1e-10);

/// Euclidean projection of `y` onto the convex hull of `points` (Wolfe's minimum-norm-point method).
struct HullProjection {
  Vector point;
  std::vector<double> coefficients;  // convex weights over `points`
  double distance = 0.0;
};
HullProjection project_onto_hull(std::span<const Vector> points, const Vector& y);

struct AnnulusCheck {
  bool holds = false;
  double centre_shift = 0.0;
  std::size_t annulus_size = 0;
};
/// Compares Z(D) with Z(A) for the annulus D = {a : |a Z(A)| >= rho(A) - eps}.
AnnulusCheck annulus_invariance_check(const BoundedSet& set, double eps, double tol);

struct BoundCheck {
  double lhs = 0.0;    // |Z(A) Z(B)|
  double bound = 0.0;  // right-hand side
  bool holds = false;
};
/// |Z(A)Z(B)| <= eps rho(A) + kappa_eps (rho(A) - rho(B)) for B a subset of A, 0 < eps < 2.
BoundCheck stability_bound_check(const BoundedSet& a, const BoundedSet& b, double eps,
                                 double tol = 1e-9);
/// Hilbert only: |Z(A)Z(B)| <= sqrt(rho(A)^2 - rho(B)^2) for B a subset of A.
BoundCheck hilbert_nested_bound_check(const BoundedSet& a, const BoundedSet& b,
                                      double tol = 1e-9);

/// An isometry x -> Qx + t of a Hilbert space.
struct Isometry {
  Matrix linear;
  Vector translation;

  Vector apply(const Vector& x) const { return linear * x + translation; }
};
struct EquivarianceCheck {
  double distance = 0.0;  // |Z(uA) - u Z(A)|
  bool holds = false;
};
EquivarianceCheck centre_equivariance_check(const BoundedSet& set, const Isometry& u,
                                            double tol = 1e-7);

/// A finitely supported measure: atoms with nonnegative weights and positive total mass.
class WeightedSet {
 public:
  WeightedSet(SpaceSpec space, std::vector<Vector> atoms, std::vector<double> weights);

  const SpaceSpec& space() const { return space_; }
  const std::vector<Vector>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const { return total_; }

 private:
  SpaceSpec space_;
  std::vector<Vector> atoms_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// Depth large enough to split every cell down to a single point.
inline constexpr int kFullRefinement = 1 << 20;

/// Partition cells (atom indices) after `depth` levels of median splitting along the
/// coordinate of largest spread.
std::vector<std::vector<std::size_t>> refine_partition(const WeightedSet& mu, int depth);

/// Mean centre: sum_i mu(A_i) Z(A_i) / mu(C) over the partition reached at `depth`.
Vector mean_centre(const WeightedSet& mu, int depth);

/// s_V(L) = rho(p_{V^perp}(L)); V given by orthonormal vectors (Hilbert only).
double s_value(const BoundedSet& set, std::span<const Vector> basis);

/// Project `x` onto the orthogonal complement of span(basis).
Vector project_out(const Vector& x, std::span<const Vector> basis);

struct ShoppingConfig {
  int subspace_budget = 2;
  std::vector<double> eps_schedule{0.2, 0.1, 0.05, 0.025};
  double tol = 1e-7;
};

struct ShoppingResult {
  Vector point;
  double s_estimate = 0.0;
  std::vector<Vector> subspace;   // orthonormal basis of the final V
  double final_eps = 0.0;
  double hull_distance = 0.0;     // membership residual for the final (V, eps)
  std::vector<double> s_trace;    // s_V after each schedule step
};

/// Truncated shopping centre: V grows by principal directions up to the budget, eps follows the
/// schedule, and the candidate is assembled from convex weights of the far annulus in V^perp.
/// Throws ConvergenceError if the final membership test fails.
ShoppingResult shopping_centre(const BoundedSet& set, const ShoppingConfig& cfg);

/// The unit cross-polytope {+-e_i} together with the two far points +-10 e_1 + e_2.
BoundedSet far_pair_example(int dim);

struct MallReport {
  int dim = 0;
  bool degenerate = false;
  std::string note;
  std::vector<Vector> centres;             // Z(g_n L), n = 2..dim
  double min_pairwise = 0.0;
  double max_pairwise = 0.0;
  std::vector<Vector> shopping_points;     // shopping centre of g_n L
  std::vector<double> shopping_estimates;  // s-hat of g_n L
  double max_shopping_norm = 0.0;
};
/// Plain centres of the swapped copies g_n L wander along the basis, shopping centres stay put.
MallReport mall_compactness_demo(int dim, const ShoppingConfig& cfg = {});

}  // namespace coarsefp
