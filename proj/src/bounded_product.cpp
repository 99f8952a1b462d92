#include "coarsefp/bounded_product.hpp"

#include "coarsefp/error.hpp"
#include "coarsefp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace coarsefp {

TruncatedProduct::TruncatedProduct(const GroupFamily& family, int level, int cap) : cap_(cap) {
  if (level < 1) throw InputError("truncation level must be positive");
  if (level > static_cast<int>(family.members.size())) {
    throw InputError("truncation level " + std::to_string(level) + " exceeds the family size " +
                     std::to_string(family.members.size()));
  }
  components_.assign(family.members.begin(), family.members.begin() + level);
  for (const auto& g : components_) reports_.push_back(spectral_report(g, cap));
}

double TruncatedProduct::h() const {
  double h = 1.0;
  for (const auto& r : reports_) h = std::min(h, r.h_gap);
  return h;
}

double TruncatedProduct::kazhdan_epsilon() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& r : reports_) e = std::min(e, r.kazhdan_lower);
  return e;
}

std::size_t TruncatedProduct::generator_count() const {
  std::size_t count = 1;
  for (const auto& g : components_) {
    const std::size_t s = g.gens().size();
    if (count > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
    count *= s;
  }
  return count;
}

std::vector<int> TruncatedProduct::generator_tuple(std::size_t index) const {
  std::vector<int> tuple(components_.size());
  for (std::size_t n = components_.size(); n-- > 0;) {
    const auto& gens = components_[n].gens();
    tuple[n] = gens[index % gens.size()];
    index /= gens.size();
  }
  return tuple;
}

FiniteGroup TruncatedProduct::materialize() const {
  FiniteGroup out = components_.front();
  for (std::size_t n = 1; n < components_.size(); ++n) out = make_product(out, components_[n], cap_);
  return out;
}

BlockRepresentation::BlockRepresentation(TruncatedProduct product, int cap) : product_(std::move(product)) {
  long long total = 0;
  for (const auto& g : product_.components()) {
    offsets_.push_back(static_cast<int>(total));
    total += g.order();
  }
  if (total > cap) {
    throw ResourceError("block representation of dimension " + std::to_string(total) + " exceeds cap " +
                        std::to_string(cap));
  }
  dim_ = static_cast<int>(total);
}

Vector BlockRepresentation::apply_block(int n, int g, const Vector& block) const {
  const auto& G = product_.components()[n];
  Vector out(block.size());
  for (int x = 0; x < G.order(); ++x) out[G.mult(g, x)] = block[x];
  return out;
}

Vector BlockRepresentation::apply(const std::vector<int>& element_tuple, const Vector& v) const {
  if (static_cast<int>(element_tuple.size()) != blocks()) throw InputError("element tuple has the wrong length");
  if (v.size() != dim_) throw InputError("vector has the wrong dimension for the block representation");
  Vector out(dim_);
  for (int n = 0; n < blocks(); ++n) {
    out.segment(offsets_[n], block_size(n)) = apply_block(n, element_tuple[n], v.segment(offsets_[n], block_size(n)));
  }
  return out;
}

Matrix BlockRepresentation::matrix(const std::vector<int>& element_tuple) const {
  if (static_cast<int>(element_tuple.size()) != blocks()) throw InputError("element tuple has the wrong length");
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int n = 0; n < blocks(); ++n) {
    const auto& G = product_.components()[n];
    for (int x = 0; x < G.order(); ++x) m(offsets_[n] + G.mult(element_tuple[n], x), offsets_[n] + x) = 1.0;
  }
  return m;
}

InvariantProjection::InvariantProjection(const BlockRepresentation& rep) {
  for (int n = 0; n < rep.blocks(); ++n) {
    offsets.push_back(rep.offset(n));
    sizes.push_back(rep.block_size(n));
  }
}

Vector InvariantProjection::apply(const Vector& v) const {
  Vector out(v.size());
  for (std::size_t n = 0; n < offsets.size(); ++n) {
    out.segment(offsets[n], sizes[n]).setConstant(v.segment(offsets[n], sizes[n]).mean());
  }
  return out;
}

Matrix InvariantProjection::matrix() const {
  const int dim = offsets.empty() ? 0 : offsets.back() + sizes.back();
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t n = 0; n < offsets.size(); ++n) {
    m.block(offsets[n], offsets[n], sizes[n], sizes[n]).setConstant(1.0 / sizes[n]);
  }
  return m;
}

double sup_displacement(const BlockRepresentation& rep, const Vector& v) {
  if (v.size() != rep.dim()) throw InputError("vector has the wrong dimension for the block representation");
  double total = 0.0;
  for (int n = 0; n < rep.blocks(); ++n) {
    const Vector block = v.segment(rep.offset(n), rep.block_size(n));
    double worst = 0.0;
    for (int s : rep.product().components()[n].gens()) {
      worst = std::max(worst, (rep.apply_block(n, s, block) - block).squaredNorm());
    }
    total += worst;
  }
  return std::sqrt(total);
}

GapInequality gap_projection_inequality_check(const BlockRepresentation& rep, const Vector& v) {
  GapInequality out;
  out.h = rep.product().h();
  if (out.h <= 0.0) throw InputError("gap projection inequality is vacuous: h = 0");
  InvariantProjection p(rep);
  out.lhs = out.h * (p.apply(v) - v).norm();
  out.rhs = sup_displacement(rep, v);
  out.holds = out.lhs <= out.rhs + 1e-8;
  return out;
}

int minimal_k0(const TruncatedProduct& p) {
  const double h = p.h();
  if (h <= 0.0) throw InputError("the truncated product has no two-sided gap (h = 0)");
  return static_cast<int>(std::ceil(2.0 / h - 1e-12));
}

IterationResult almost_invariant_iteration(const BlockRepresentation& rep, const Vector& v0, int k0, int steps,
                                           bool record_vectors) {
  IterationResult out;
  out.h = rep.product().h();
  const int k_min = minimal_k0(rep.product());
  if (k0 < k_min) throw InputError("k0 = " + std::to_string(k0) + " is below ceil(2/h) = " + std::to_string(k_min));
  if (steps < 0) throw InputError("steps must be nonnegative");
  if (v0.size() != rep.dim()) throw InputError("v0 has the wrong dimension");
  if (std::abs(v0.norm() - 1.0) > 1e-9) throw InputError("v0 must be a unit vector");
  const double sup0 = sup_displacement(rep, v0);
  if (sup0 > 1.0 / k0) throw InputError("v0 is not 1/k0-invariant: sup displacement " + std::to_string(sup0));
  out.k0 = k0;
  InvariantProjection p(rep);
  const Vector pv0 = p.apply(v0);
  Vector v = v0;
  double sup = sup0;
  if (record_vectors) out.vectors.push_back(v);
  for (int i = 0; i < steps; ++i) {
    const int k = k0 + i;
    if (sup > 1.0 / k + 1e-10) {
      throw InvariantViolation("iteration: sup displacement " + std::to_string(sup) + " exceeds 1/k at k = " +
                               std::to_string(k));
    }
    Vector next = (static_cast<double>(k - 2) / k) * v + (2.0 / k) * p.apply(v);
    next /= next.norm();
    IterationStep st;
    st.k = k;
    st.step_norm = (next - v).norm();
    st.bound = 4.0 / (out.h * static_cast<double>(k) * k);
    st.sup_displacement = sup;
    out.trace.push_back(st);
    if (st.step_norm > st.bound + 1e-10) {
      throw InvariantViolation("iteration: step " + std::to_string(st.step_norm) + " exceeds 4/(h k^2) at k = " +
                               std::to_string(k));
    }
    v = std::move(next);
    sup = sup_displacement(rep, v);
    if (record_vectors) out.vectors.push_back(v);
  }
  out.final_vector = v;
  out.final_sup_displacement = sup;
  const double npv0 = pv0.norm();
  out.distance_to_limit = npv0 > 0.0 ? (v - pv0 / npv0).norm() : std::numeric_limits<double>::infinity();
  return out;
}

AffineAction coboundary_product_action(const BlockRepresentation& rep, const Vector& w, std::size_t max_generators) {
  if (w.size() != rep.dim()) throw InputError("w has the wrong dimension for the block representation");
  const std::size_t count = rep.product().generator_count();
  if (count > max_generators) {
    throw ResourceError("product generating set has " + std::to_string(count) + " elements, above the cap of " +
                        std::to_string(max_generators));
  }
  std::vector<ActionGenerator> gens;
  for (std::size_t i = 0; i < count; ++i) {
    const auto tuple = rep.product().generator_tuple(i);
    ActionGenerator g;
    g.label = "g" + std::to_string(i);
    g.linear = rep.matrix(tuple);
    g.translation = w - g.linear * w;
    gens.push_back(std::move(g));
  }
  return AffineAction(rep.dim(), std::move(gens));
}

namespace {

// Element tuple whose block matrix equals m, if m is the block representation of a generator tuple.
bool match_generator(const BlockRepresentation& rep, const Matrix& m) {
  std::vector<int> tuple;
  for (int n = 0; n < rep.blocks(); ++n) {
    const auto& G = rep.product().components()[n];
    const int off = rep.offset(n);
    const int sz = rep.block_size(n);
    int found = -1;
    for (int s : G.gens()) {
      bool ok = true;
      for (int x = 0; x < sz && ok; ++x) ok = m(off + G.mult(s, x), off + x) == 1.0;
      if (ok) {
        found = s;
        break;
      }
    }
    if (found < 0) return false;
    tuple.push_back(found);
  }
  return (m - rep.matrix(tuple)).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

KazhdanReport kazhdan_displacement_check(const BlockRepresentation& rep, const AffineAction& action, double c_bound,
                                         const Vector& v, int max_len, int samples, std::uint64_t seed) {
  if (action.dim() != rep.dim()) throw InputError("action dimension does not match the block representation");
  if (v.size() != rep.dim()) throw InputError("base point has the wrong dimension");
  if (!(c_bound >= 0.0)) throw InputError("C bound must be nonnegative");
  for (const auto& g : action.generators()) {
    if (!match_generator(rep, g.linear)) {
      throw InputError("linear part of '" + g.label + "' is not a generator of the block representation");
    }
  }
  if (!coboundary_solve(action)) {
    throw InputError("translation part is not a coboundary; a finite group admits no other cocycle");
  }
  KazhdanReport out;
  out.c_bound = c_bound;
  out.epsilon = rep.product().kazhdan_epsilon();
  out.max_generator_displacement = displacement(action, v);
  if (out.max_generator_displacement > c_bound + 1e-12) {
    throw InputError("a generator moves the base point by " + std::to_string(out.max_generator_displacement) +
                     ", more than C");
  }
  out.bound = std::isinf(out.epsilon) ? 0.0 : 2.0 * c_bound / out.epsilon;
  Rng rng = make_rng(seed);
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const Word w = random_word(action, max_len, rng);
    const double disp = (action.evaluate_word(w, v) - v).norm();
    out.max_displacement = std::max(out.max_displacement, disp);
  }
  if (out.bound > 0.0) {
    out.max_ratio = out.max_displacement / out.bound;
  } else {
    out.max_ratio = out.max_displacement > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  out.holds = out.max_displacement <= out.bound + 1e-9;
  return out;
}

namespace {

Vector almost_invariant_vector(const FiniteGroup& g) {
  const int n = g.order();
  Vector v(n);
  if (g.label() == "cyclic:" + std::to_string(n)) {
    for (int x = 0; x < n; ++x) v[x] = std::cos(2.0 * std::numbers::pi * x / n);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(averaging_operator(g));
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed for " + g.label());
    v.setZero();
    for (int i = n - 1; i >= 0; --i) {
      if (es.eigenvalues()[i] < 1.0 - kUnitEigenTol) {
        v = es.eigenvectors().col(i);
        break;
      }
    }
  }
  v.array() -= v.mean();
  const double nv = v.norm();
  if (nv == 0.0) return v;
  return v / nv;
}

}  // namespace

CocycleGrowth unbounded_cocycle_demo(const GroupFamily& family, int level, const std::vector<int>& lengths, int cap,
                                     double gap_floor, std::uint64_t seed, int cocycle_samples) {
  if (family.members.empty()) throw InputError("empty family");
  bool gap_vanishes = false;
  for (const auto& g : family.members) {
    if (spectral_report(g, cap).one_sided_gap < gap_floor) gap_vanishes = true;
  }
  if (!gap_vanishes) {
    throw InputError("every member has spectral gap >= " + std::to_string(gap_floor) +
                     "; the family looks like an expander and carries no unbounded cocycle of this kind");
  }
  for (int m : lengths) {
    if (m < 0) throw InputError("word lengths must be nonnegative");
  }
  BlockRepresentation rep(TruncatedProduct(family, level, cap), cap);
  const auto& comps = rep.product().components();

  CocycleGrowth out;
  Vector v(rep.dim());
  out.schedule_met = true;
  for (int n = 0; n < rep.blocks(); ++n) {
    const Vector vn = almost_invariant_vector(comps[n]);
    v.segment(rep.offset(n), rep.block_size(n)) = vn;
    double worst = 0.0;
    for (int s : comps[n].gens()) worst = std::max(worst, (rep.apply_block(n, s, vn) - vn).norm());
    out.member_orders.push_back(comps[n].order());
    out.member_displacements.push_back(worst);
    if (worst > std::ldexp(1.0, -(n + 1))) out.schedule_met = false;
  }
  out.max_generator_norm = sup_displacement(rep, v);

  auto b = [&](const std::vector<int>& g) { return Vector(rep.apply(g, v) - v); };
  std::vector<int> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  int largest = 0;
  for (const auto& g : comps) largest = std::max(largest, g.order());
  for (int m : sorted) {
    std::vector<int> gm(rep.blocks());
    for (int n = 0; n < rep.blocks(); ++n) {
      const auto& G = comps[n];
      int e = G.identity();
      for (int k = 0; k < m; ++k) e = G.mult(e, G.gens().front());
      gm[n] = e;
    }
    out.table.push_back({m, b(gm).norm()});
  }
  out.monotone = true;
  out.strictly_increasing = true;
  for (std::size_t i = 1; i < out.table.size(); ++i) {
    const double prev = out.table[i - 1].norm;
    const double cur = out.table[i].norm;
    if (cur < prev - 1e-12) out.monotone = false;
    if (4 * out.table[i].m <= largest && !(cur > prev)) out.strictly_increasing = false;
  }

  Rng rng = make_rng(seed);
  auto random_element = [&] {
    std::uniform_int_distribution<int> len(0, 32);
    std::vector<int> g(rep.blocks());
    for (int n = 0; n < rep.blocks(); ++n) g[n] = comps[n].identity();
    const int l = len(rng);
    for (int k = 0; k < l; ++k) {
      for (int n = 0; n < rep.blocks(); ++n) {
        const auto& gens = comps[n].gens();
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        g[n] = comps[n].mult(g[n], gens[pick(rng)]);
      }
    }
    return g;
  };
  out.cocycle_samples = cocycle_samples;
  for (int i = 0; i < cocycle_samples; ++i) {
    const auto g = random_element();
    const auto h = random_element();
    std::vector<int> gh(rep.blocks());
    for (int n = 0; n < rep.blocks(); ++n) gh[n] = comps[n].mult(g[n], h[n]);
    const double err = (b(gh) - rep.apply(g, b(h)) - b(g)).cwiseAbs().maxCoeff();
    out.cocycle_error = std::max(out.cocycle_error, err);
  }
  return out;
}

}  // namespace coarsefp
