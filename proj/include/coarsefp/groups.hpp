#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coarsefp {

/// Default cap on the number of elements of a single group (dense spectra are cubic).
inline constexpr int kDefaultOrderCap = 10000;

/// A finite group given by its multiplication table, with a symmetric set S of generators.
///
/// Elements are the dense indices 0..order-1. `mult(a, b)` is the index of the product ab.
/// The generating set is stored without repetitions. It need not generate the whole group;
/// products of generating sets, for instance, can fail to (see `generates`).
class FiniteGroup {
 public:
  FiniteGroup(int order, std::vector<std::int32_t> mult, std::vector<std::int32_t> gens,
              std::string label = {});

  int order() const { return order_; }
  int mult(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return identity_; }
  const std::vector<std::int32_t>& gens() const { return gens_; }
  const std::vector<std::int32_t>& table() const { return mult_; }
  const std::string& label() const { return label_; }

  /// True when the subgroup generated by S is the whole group.
  bool generates() const;

 private:
  int order_;
  std::vector<std::int32_t> mult_;
  std::vector<std::int32_t> inv_;
  int identity_ = 0;
  std::vector<std::int32_t> gens_;
  std::string label_;
};

/// The group with one element and S = {e}.
FiniteGroup make_trivial();
/// Z/n with S = {+1, -1}; n >= 2.
FiniteGroup make_cyclic(int n);
/// Dihedral group of order 2n with S = {r, r^-1, s}; n >= 3.
FiniteGroup make_dihedral(int n);
/// Symmetric group on n letters with S = {(1 2), c, c^-1}, c the n-cycle; 3 <= n <= 7.
FiniteGroup make_symmetric(int n);
/// SL_2(F_p) with the four elementary generators E12(+-1), E21(+-1); p prime, 3 <= p <= 17.
FiniteGroup make_sl2(int p);
/// Direct product with generating set S_G x S_H. Throws ResourceError above `cap` elements.
FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h, int cap = kDefaultOrderCap);

/// Word lengths l(x) with respect to S (BFS in the Cayley graph). Throws InputError if S does not
/// generate.
std::vector<int> word_lengths(const FiniteGroup& g);

/// Adjacency with multiplicity: entry (x, s x) is incremented for each s in S.
Eigen::MatrixXi cayley_adjacency(const FiniteGroup& g);

/// Exhaustive (order <= 64) or sampled associativity, identity and inverse checks plus symmetry
/// of S. Throws InvariantViolation on failure.
void validate_group(const FiniteGroup& g, std::uint64_t seed = 0);

/// Builds a group from "cyclic:n", "dihedral:n", "symmetric:n", "sl2:p", "trivial",
/// or "prod:SPEC,SPEC" (products nest left to right).
FiniteGroup build_group(const std::string& spec, int cap = kDefaultOrderCap);

/// An ordered list of groups; e.g. a candidate expander family.
struct GroupFamily {
  std::string label;
  std::vector<FiniteGroup> members;

  std::size_t max_generators() const;
};

/// Parses a family: members separated by ';', each either a group spec or
/// "kind:a..b[:step]" / "kind:a,b,c" for cyclic, dihedral, symmetric and sl2.
GroupFamily build_family(const std::string& spec, int cap = kDefaultOrderCap);

}  // namespace coarsefp
