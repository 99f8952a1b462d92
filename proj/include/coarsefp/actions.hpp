#pragma once

#include "coarsefp/metric.hpp"
#include "coarsefp/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarsefp {

/// x -> linear * x + translation.
struct AffineMap {
  Matrix linear;
  Vector translation;

  static AffineMap identity(int dim);
  Vector apply(const Vector& x) const { return linear * x + translation; }
  /// (*this) o other.
  AffineMap compose(const AffineMap& other) const;
  /// Inverse of an isometric map: (L^T, -L^T t).
  AffineMap inverse() const;
};

struct ActionGenerator {
  std::string label;
  Matrix linear;
  Vector translation;
};

/// One letter of a word: generator index and sign (+1 or -1).
struct Letter {
  int gen = 0;
  int sign = 1;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

/// Cancels adjacent s s^-1 pairs.
Word reduce_word(const Word& w);

/// An affine isometric action sigma(s) v = pi(s) v + b(s) of a group given by generators on R^dim.
class AffineAction {
 public:
  /// Validates orthogonality of each pi(s) (1e-9) and that each relation word acts as the
  /// identity (1e-8). Throws InputError otherwise.
  AffineAction(int dim, std::vector<ActionGenerator> generators, std::vector<std::string> relations = {});

  int dim() const { return dim_; }
  const std::vector<ActionGenerator>& generators() const { return gens_; }
  const std::vector<std::string>& relations() const { return relations_; }
  int index_of(const std::string& label) const;

  /// Whitespace separated tokens "s" or "s^k" (k a nonzero integer). Empty string is the identity.
  Word parse_word(const std::string& text) const;
  std::string format_word(const Word& w) const;

  /// sigma(s_1 ... s_k) = sigma(s_1) o ... o sigma(s_k), reduced first.
  AffineMap word_map(const Word& w) const;
  AffineMap letter_map(const Letter& l) const;
  Vector evaluate_word(const Word& w, const Vector& v) const;
  Vector evaluate_word(const std::string& w, const Vector& v) const;

  static AffineAction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  int dim_;
  std::vector<ActionGenerator> gens_;
  std::vector<std::string> relations_;
};

/// Random word of length uniform in [0, max_len] over generators and inverses.
Word random_word(const AffineAction& a, int max_len, Rng& rng);

struct CocycleCheck {
  int samples = 0;
  double max_error = 0.0;
  bool holds = false;
};
/// On random word pairs (g, h), compares b(gh) with pi(g) b(h) + b(g) to 1e-9. b(gh) is
/// evaluated letter by letter on the concatenated word.
CocycleCheck cocycle_check(const AffineAction& a, int samples, std::uint64_t seed = 0, int max_len = 8);

/// max over generators of |sigma(s) x - x|.
double displacement(const AffineAction& a, const Vector& x);

struct LipschitzCheck {
  int pairs = 0;
  double max_excess = 0.0;  // max of |d(x)-d(y)| - 2|x-y|
  bool holds = false;
};
/// |d(x) - d(y)| <= 2|x - y| + 1e-9 on random pairs drawn from the cube [-scale, scale]^dim.
LipschitzCheck lipschitz_check(const AffineAction& a, int pairs, std::uint64_t seed = 0, double scale = 10.0);

struct DescentConfig {
  double alpha = 0.5;
  double R = 2.0;
  double tol = 1e-9;
  int max_iters = 10000;
  /// Uniform samples of the ball B(x, R d(x)) per stage; the witness needs at least 1000.
  int ball_samples = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DescentStep {
  int n = 0;
  double displacement = 0.0;
  double step = 0.0;
};

struct DescentResult {
  enum class Status { converged, witness };
  Status status = Status::converged;
  Vector point;
  double displacement = 0.0;
  int iterations = 0;
  std::vector<DescentStep> trace;
  /// Witness only: minimum of d over the sampled ball, and the number of samples. Sample based,
  /// not a proof.
  double witness_min = 0.0;
  int witness_samples = 0;
};

/// Recursive descent: from x_n find x_{n+1} in B(x_n, R d(x_n)) with d(x_{n+1}) <= alpha d(x_n).
/// Returns the limit when d <= tol, or a positive-displacement witness when no candidate and no
/// ball sample decreases d enough. Throws ConvergenceError (with the best iterate) at max_iters.
DescentResult fixed_point_search(const AffineAction& a, const Vector& x0, const DescentConfig& cfg);
DescentResult fixed_point_search(const AffineAction& a, const DescentConfig& cfg);

/// Least-squares solution of (I - pi(s)) v = b(s) over all s; returned if the residual is <= 1e-7.
std::optional<Vector> coboundary_solve(const AffineAction& a);

struct GaussianEmbedding {
  Matrix gram;
  Matrix factor;  // F with F^T F = gram; column i is the image of point i
  double min_eigenvalue = 0.0;
  double residual = 0.0;  // max |F^T F - G|
};
/// Gram matrix exp(-t |v_i - v_j|^2) and a factor from its eigendecomposition. Throws
/// NumericalError if the Gram matrix has an eigenvalue below -1e-9.
GaussianEmbedding gaussian_embedding(const std::vector<Vector>& points, double t);

}  // namespace coarsefp
