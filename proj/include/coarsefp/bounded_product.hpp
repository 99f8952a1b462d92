#pragma once

#include "coarsefp/actions.hpp"
#include "coarsefp/groups.hpp"
#include "coarsefp/spectral.hpp"

#include <cstdint>
#include <vector>

namespace coarsefp {

/// The first `level` members of a family, with the product generating set S_1 x ... x S_N.
/// The generating set is never enumerated unless asked for.
class TruncatedProduct {
 public:
  TruncatedProduct(const GroupFamily& family, int level, int cap = kDefaultOrderCap);

  int level() const { return static_cast<int>(components_.size()); }
  const std::vector<FiniteGroup>& components() const { return components_; }
  const std::vector<SpectralReport>& reports() const { return reports_; }
  /// Infimum of the component two-sided gaps.
  double h() const;
  /// min over components of kazhdan_lower.
  double kazhdan_epsilon() const;
  /// prod |S_n|, saturating at SIZE_MAX.
  std::size_t generator_count() const;
  /// Mixed-radix decoding: element tuple (one element index per component) of generator `index`.
  std::vector<int> generator_tuple(std::size_t index) const;
  /// The product group itself (order prod |G_n|); ResourceError above the cap.
  FiniteGroup materialize() const;
  int cap() const { return cap_; }

 private:
  std::vector<FiniteGroup> components_;
  std::vector<SpectralReport> reports_;
  int cap_;
};

/// Blockwise left-regular representation on L^2(G_1) + ... + L^2(G_N). Constants are kept, so the
/// invariant subspace is spanned by the per-block constant vectors.
class BlockRepresentation {
 public:
  /// Throws ResourceError when sum |G_n| exceeds `cap`.
  explicit BlockRepresentation(TruncatedProduct product, int cap = kDefaultOrderCap);

  const TruncatedProduct& product() const { return product_; }
  int dim() const { return dim_; }
  int blocks() const { return product_.level(); }
  int offset(int n) const { return offsets_[n]; }
  int block_size(int n) const { return product_.components()[n].order(); }

  /// (g_1, ..., g_N) acting by (g f)(x) = f(g^-1 x) on each block.
  Vector apply(const std::vector<int>& element_tuple, const Vector& v) const;
  Matrix matrix(const std::vector<int>& element_tuple) const;
  /// Left translation of a single block vector by element g of component n.
  Vector apply_block(int n, int g, const Vector& block) const;

 private:
  TruncatedProduct product_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// Orthogonal projection onto the per-block constants.
struct InvariantProjection {
  std::vector<int> offsets;
  std::vector<int> sizes;

  explicit InvariantProjection(const BlockRepresentation& rep);
  Vector apply(const Vector& v) const;
  Matrix matrix() const;
};

/// sup over (s_1..s_N) in S_1 x ... x S_N of |s v - v|, computed per block:
/// sqrt(sum_n max_{s in S_n} |s v_n - v_n|^2).
double sup_displacement(const BlockRepresentation& rep, const Vector& v);

struct GapInequality {
  double h = 0.0;
  double lhs = 0.0;  // h |p v - v|
  double rhs = 0.0;  // sup_s |s v - v|
  bool holds = false;
};
/// h |p v - v| <= sup_s |s v - v| with 1e-8 slack. InputError if h = 0.
GapInequality gap_projection_inequality_check(const BlockRepresentation& rep, const Vector& v);

struct IterationStep {
  int k = 0;
  double step_norm = 0.0;  // |v_{k+1} - v_k|
  double bound = 0.0;      // 4 / (h k^2)
  double sup_displacement = 0.0;  // sup_s |s v_k - v_k|
};

struct IterationResult {
  double h = 0.0;
  int k0 = 0;
  std::vector<IterationStep> trace;
  std::vector<Vector> vectors;  // v_{k0}, v_{k0+1}, ... when recorded
  Vector final_vector;
  double final_sup_displacement = 0.0;
  /// Distance from the final vector to p v0 / |p v0|.
  double distance_to_limit = 0.0;
};

/// v_{k+1} = ((k-2)/k v_k + (2/k) p v_k) / |...|, k = k0, ..., k0 + steps - 1.
/// Requires h > 0, k0 >= ceil(2/h), |v0| = 1 and sup_s |s v0 - v0| <= 1/k0 (InputError otherwise).
/// Every step checks sup_s |s v_k - v_k| <= 1/k and |v_{k+1} - v_k| <= 4/(h k^2), both with
/// 1e-10 slack; a violation throws InvariantViolation.
IterationResult almost_invariant_iteration(const BlockRepresentation& rep, const Vector& v0, int k0, int steps,
                                           bool record_vectors = false);

/// ceil(2/h) for the product's h; InputError if h = 0.
int minimal_k0(const TruncatedProduct& p);

/// Affine action of the truncated product on the block space with b(s) = w - pi(s) w, one generator
/// per tuple in S_1 x ... x S_N (labels g0, g1, ...). ResourceError above `max_generators`.
AffineAction coboundary_product_action(const BlockRepresentation& rep, const Vector& w,
                                       std::size_t max_generators = 4096);

struct KazhdanReport {
  double epsilon = 0.0;       // min of component kazhdan_lower
  double c_bound = 0.0;
  double bound = 0.0;         // 2 C / epsilon
  double max_generator_displacement = 0.0;
  double max_displacement = 0.0;
  double max_ratio = 0.0;     // max |alpha(g) v - v| / bound
  int samples = 0;
  bool holds = false;
};
/// Samples words of length <= max_len and checks |alpha(g) v - v| <= 2 C / epsilon.
/// InputError when the linear parts are not the block representation of P, when the translation
/// part is not a coboundary (finite groups admit no other cocycles), or when some generator
/// moves v by more than C.
KazhdanReport kazhdan_displacement_check(const BlockRepresentation& rep, const AffineAction& action, double c_bound,
                                         const Vector& v, int max_len = 12, int samples = 1000,
                                         std::uint64_t seed = 0);

struct GrowthRow {
  int m = 0;
  double norm = 0.0;  // |b(g_m)|
};

struct CocycleGrowth {
  std::vector<int> member_orders;
  std::vector<double> member_displacements;  // sup_{s in S_n} |s v_n - v_n|
  bool schedule_met = false;                 // member_displacements[n-1] <= 2^-n for all n
  double max_generator_norm = 0.0;           // sup over product generators of |b(s)|
  std::vector<GrowthRow> table;
  bool monotone = false;
  /// Strict increase between consecutive lengths, for lengths up to (largest member order) / 4.
  bool strictly_increasing = false;
  double cocycle_error = 0.0;  // max |b(gh) - pi(g) b(h) - b(g)| over random word pairs
  int cocycle_samples = 0;
};

/// b(g) = (pi(g) v_n - v_n)_n over the N-truncation with almost invariant unit vectors v_n in
/// L^2_0(G_n): the cosine vector x -> cos(2 pi x / n) for cyclic members, otherwise an eigenvector
/// of the second largest eigenvalue of M_S. g_m is the m-th power of the tuple of first generators.
/// Refuses (InputError) when every family member has one-sided gap >= gap_floor.
CocycleGrowth unbounded_cocycle_demo(const GroupFamily& family, int level, const std::vector<int>& lengths,
                                     int cap = kDefaultOrderCap, double gap_floor = 0.05, std::uint64_t seed = 0,
                                     int cocycle_samples = 1000);

}  // namespace coarsefp
