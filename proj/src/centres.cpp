#include "coarsefp/centres.hpp"

#include "coarsefp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace coarsefp {

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

struct Normalised {
  std::vector<Vector> q;
  Vector offset;
  double scale = 0.0;
};

// Translate to the coordinate mean and rescale so the farthest point has norm 1.
Normalised normalise(const SpaceSpec& space, const std::vector<Vector>& points) {
  Normalised out;
  out.offset = Vector::Zero(space.dim());
  for (const auto& p : points) out.offset += p;
  out.offset /= static_cast<double>(points.size());
  for (const auto& p : points) out.scale = std::max(out.scale, norm(space, p - out.offset));
  out.q.reserve(points.size());
  const double s = out.scale > 0.0 ? out.scale : 1.0;
  for (const auto& p : points) out.q.push_back((p - out.offset) / s);
  return out;
}

struct Circumcentre {
  Vector centre;
  Vector lambda;  // affine weights over the support, summing to one
  bool ok = false;
};

// Point of aff(support) equidistant from all support points.
Circumcentre circumcentre(const std::vector<Vector>& q, const std::vector<std::size_t>& support) {
  Circumcentre out;
  const Vector& p0 = q[support.front()];
  const auto k = static_cast<Eigen::Index>(support.size());
  if (k == 1) {
    out.centre = p0;
    out.lambda = Vector::Ones(1);
    out.ok = true;
    return out;
  }
  Matrix d(p0.size(), k - 1);
  for (Eigen::Index j = 1; j < k; ++j) d.col(j - 1) = q[support[j]] - p0;
  if (k - 1 > d.rows()) return out;
  Eigen::HouseholderQR<Matrix> qr(d);
  const Matrix r = qr.matrixQR().topRows(k - 1).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k - 1; ++j) {
    if (std::abs(r(j, j)) < 1e-12) return out;
  }
  // (x - p0) = D mu with D^T D mu = diag(D^T D)/2; with D = QR this is R^T y = diag/2, x = p0 + Q y.
  const Vector rhs = 0.5 * d.colwise().squaredNorm().transpose();
  const Vector y = r.transpose().triangularView<Eigen::Lower>().solve(rhs);
  const Vector mu = r.triangularView<Eigen::Upper>().solve(y);
  const Matrix thin_q = qr.householderQ() * Matrix::Identity(d.rows(), k - 1);
  out.centre = p0 + thin_q * y;
  out.lambda.resize(k);
  out.lambda(0) = 1.0 - mu.sum();
  out.lambda.tail(k - 1) = mu;
  out.ok = true;
  return out;
}

struct HilbertSolve {
  Vector centre;
  std::vector<std::size_t> support;
  int iterations = 0;
  bool ok = false;
};

// Support-set pivoting for the minimum enclosing ball; works on normalised points.
HilbertSolve hilbert_pivoting(const std::vector<Vector>& q) {
  const std::size_t n = q.size();
  HilbertSolve out;
  Vector c = q.front();
  std::size_t far = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if ((q[i] - c).squaredNorm() > (q[far] - c).squaredNorm()) far = i;
  }
  std::vector<std::size_t> support{far};
  std::vector<char> in_support(n, 0);
  in_support[far] = 1;

  const int cap = static_cast<int>(50 * n) + 1000;
  for (int iter = 0; iter < cap; ++iter) {
    out.iterations = iter + 1;
    const Circumcentre cc = circumcentre(q, support);
    if (!cc.ok) return out;
    const Vector dir = cc.centre - c;
    if (dir.norm() > 1e-15) {
      const Vector& anchor = q[support.front()];
      const double r2 = (c - anchor).squaredNorm();
      double t_min = 1.0;
      std::ptrdiff_t hit = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (in_support[i]) continue;
        const double w = dir.dot(q[i] - anchor);
        if (w >= 0.0) continue;
        const double f0 = (c - q[i]).squaredNorm() - r2;
        const double t = std::max(0.0, f0 / (2.0 * w));
        if (t < t_min) {
          t_min = t;
          hit = static_cast<std::ptrdiff_t>(i);
        }
      }
      if (hit >= 0) {
        c += t_min * dir;
        support.push_back(static_cast<std::size_t>(hit));
        in_support[static_cast<std::size_t>(hit)] = 1;
        continue;
      }
    }
    c = cc.centre;
    if (support.size() > 1) {
      Eigen::Index worst = 0;
      const double min_lambda = cc.lambda.minCoeff(&worst);
      if (min_lambda < -1e-13) {
        in_support[support[static_cast<std::size_t>(worst)]] = 0;
        support.erase(support.begin() + worst);
        continue;
      }
    }
    double r2 = 0.0;
    for (auto s : support) r2 = std::max(r2, (c - q[s]).squaredNorm());
    std::size_t outside = n;
    double worst_excess = r2 * 1e-12 + 1e-30;
    for (std::size_t i = 0; i < n; ++i) {
      const double excess = (c - q[i]).squaredNorm() - r2;
      if (excess > worst_excess) {
        worst_excess = excess;
        outside = i;
      }
    }
    if (outside == n || in_support[outside]) {
      out.centre = c;
      out.support = support;
      out.ok = true;
      return out;
    }
    support.push_back(outside);
    in_support[outside] = 1;
  }
  return out;
}

struct BarrierSolve {
  Vector centre;
  int iterations = 0;
  double gap = 0.0;
  bool ok = false;
};

// Log-barrier Newton method for min t s.t. sum_j phi(x_j - a_ij) <= t, phi(u) = |u|^p.
// For p < 2 phi is smoothed to (u^2 + eta^2)^(p/2) so the Hessian stays finite.
BarrierSolve lp_barrier(const std::vector<Vector>& q, double p) {
  const auto m = static_cast<double>(q.size());
  const Eigen::Index d = q.front().size();
  const double eta = p < 2.0 ? 1e-7 : 0.0;
  auto phi = [&](double u) {
    return eta > 0.0 ? std::pow(u * u + eta * eta, p / 2.0) : std::pow(std::abs(u), p);
  };
  auto dphi = [&](double u) {
    if (eta > 0.0) return p * u * std::pow(u * u + eta * eta, p / 2.0 - 1.0);
    return p * std::pow(std::abs(u), p - 1.0) * (u < 0.0 ? -1.0 : 1.0);
  };
  auto ddphi = [&](double u) {
    if (eta > 0.0) {
      const double s = u * u + eta * eta;
      return p * std::pow(s, p / 2.0 - 2.0) * ((p - 1.0) * u * u + eta * eta);
    }
    return p * (p - 1.0) * std::pow(std::abs(u), p - 2.0);
  };
  auto f = [&](const Vector& x, const Vector& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) s += phi(x(j) - a(j));
    return s;
  };

  BarrierSolve out;
  Vector x = Vector::Zero(d);
  double fmax = 0.0;
  for (const auto& a : q) fmax = std::max(fmax, f(x, a));
  double t = 1.5 * fmax + 1e-3;
  double mu = 1.0;
  const double gap_target = 1e-13;

  auto objective = [&](const Vector& xx, double tt, bool& feasible) {
    double val = mu * tt;
    feasible = true;
    for (const auto& a : q) {
      const double s = tt - f(xx, a);
      if (!(s > 0.0)) {
        feasible = false;
        return std::numeric_limits<double>::infinity();
      }
      val -= std::log(s);
    }
    return val;
  };

  int total = 0;
  while (m / mu > gap_target) {
    for (int newton = 0; newton < 200; ++newton) {
      ++total;
      Vector grad = Vector::Zero(d + 1);
      Matrix hess = Matrix::Zero(d + 1, d + 1);
      grad(d) = mu;
      for (const auto& a : q) {
        Vector gf(d);
        Vector hf(d);
        double fv = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const double u = x(j) - a(j);
          fv += phi(u);
          gf(j) = dphi(u);
          hf(j) = ddphi(u);
        }
        const double s = t - fv;
        grad.head(d) += gf / s;
        grad(d) -= 1.0 / s;
        hess.topLeftCorner(d, d) += gf * gf.transpose() / (s * s);
        hess.topLeftCorner(d, d).diagonal() += hf / s;
        hess.topRightCorner(d, 1) -= gf / (s * s);
        hess(d, d) += 1.0 / (s * s);
      }
      hess.bottomLeftCorner(1, d) = hess.topRightCorner(d, 1).transpose();
      const Vector step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!std::isfinite(decrement)) return out;
      if (decrement / 2.0 < 1e-12) break;
      bool feasible = false;
      const double current = objective(x, t, feasible);
      double alpha = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        const Vector xn = x + alpha * step.head(d);
        const double tn = t + alpha * step(d);
        const double val = objective(xn, tn, feasible);
        if (feasible && val <= current - 0.25 * alpha * decrement) {
          x = xn;
          t = tn;
          break;
        }
        alpha *= 0.5;
      }
      if (alpha < 1e-15) break;
    }
    mu *= 8.0;
  }
  out.centre = x;
  out.iterations = total;
  out.gap = m / mu;
  out.ok = true;
  return out;
}

bool points_equal(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff() <= 1e-12; }

}  // namespace

BoundedSet::BoundedSet(SpaceSpec space, std::vector<Vector> points)
    : space_(space), points_(std::move(points)) {
  if (points_.empty()) throw InputError("bounded set must be non-empty");
  for (const auto& p : points_) {
    space_.check_point(p);
    if (!p.allFinite()) throw InputError("bounded set contains a non-finite coordinate");
  }
}

bool BoundedSet::contains_all(const BoundedSet& other) const {
  if (!(other.space() == space_)) return false;
  return std::all_of(other.points().begin(), other.points().end(), [&](const Vector& b) {
    return std::any_of(points_.begin(), points_.end(), [&](const Vector& a) { return points_equal(a, b); });
  });
}

double radius_at(const BoundedSet& set, const Vector& x) {
  set.space().check_point(x);
  double r = 0.0;
  for (const auto& a : set.points()) r = std::max(r, distance(set.space(), a, x));
  return r;
}

CentreResult chebyshev_centre(const BoundedSet& set, double tol) {
  if (!(tol > 0.0)) throw InputError("chebyshev_centre: tol must be positive");
  const auto& space = set.space();
  const Normalised nrm = normalise(space, set.points());
  CentreResult result;
  if (nrm.scale == 0.0) {
    result.centre = set.points().front();
    result.support_size = 1;
    return result;
  }

  bool solved = false;
  if (space.is_hilbert()) {
    const HilbertSolve hs = hilbert_pivoting(nrm.q);
    if (hs.ok) {
      result.centre = nrm.offset + nrm.scale * hs.centre;
      result.iterations = hs.iterations;
      result.support_size = hs.support.size();
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (auto s : hs.support) {
        const double r = (result.centre - set.points()[s]).norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      result.residual = hi - lo;
      solved = true;
    }
  }
  if (!solved) {
    const BarrierSolve bs = lp_barrier(nrm.q, space.p());
    const Vector best = nrm.offset + nrm.scale * bs.centre;
    if (!bs.ok) throw ConvergenceError("chebyshev_centre: barrier Newton method failed", to_std(best));
    result.centre = best;
    result.iterations = bs.iterations;
    result.residual = bs.gap;
    if (bs.gap > std::max(tol * tol, 1e-12)) {
      throw ConvergenceError("chebyshev_centre: duality gap above tolerance", to_std(best));
    }
  }
  result.rho = radius_at(set, result.centre);
  return result;
}

HullProjection project_onto_hull(std::span<const Vector> points, const Vector& y) {
  if (points.empty()) throw InputError("project_onto_hull: empty point list");
  const auto n = points.size();
  const Eigen::Index d = y.size();
  Matrix q(d, static_cast<Eigen::Index>(n));
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != d) throw InputError("project_onto_hull: dimension mismatch");
    q.col(static_cast<Eigen::Index>(i)) = points[i] - y;
    scale = std::max(scale, q.col(static_cast<Eigen::Index>(i)).norm());
  }
  HullProjection out;
  out.coefficients.assign(n, 0.0);
  if (scale == 0.0) {
    out.point = y;
    out.coefficients[0] = 1.0;
    return out;
  }
  q /= scale;

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (q.col(static_cast<Eigen::Index>(i)).squaredNorm() < q.col(static_cast<Eigen::Index>(start)).squaredNorm()) start = i;
  }
  std::vector<std::size_t> active{start};
  Vector lambda = Vector::Ones(1);
  Vector x = q.col(static_cast<Eigen::Index>(start));

  auto affine_min_norm = [&](const std::vector<std::size_t>& s) {
    const auto k = static_cast<Eigen::Index>(s.size());
    Matrix qs(d, k);
    for (Eigen::Index j = 0; j < k; ++j) qs.col(j) = q.col(static_cast<Eigen::Index>(s[static_cast<std::size_t>(j)]));
    const Matrix g = qs.transpose() * qs + Matrix::Ones(k, k);
    const Vector a = g.colPivHouseholderQr().solve(Vector::Ones(k));
    return Vector(a / a.sum());
  };

  const int cap = 20 * static_cast<int>(n) + 200;
  for (int major = 0; major < cap; ++major) {
    Eigen::Index j = 0;
    const double best = (x.transpose() * q).minCoeff(&j);
    if (best >= x.squaredNorm() - 1e-14) break;
    const auto jj = static_cast<std::size_t>(j);
    if (std::find(active.begin(), active.end(), jj) != active.end()) break;
    active.push_back(jj);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;
    for (int minor = 0; minor < cap; ++minor) {
      const Vector alpha = affine_min_norm(active);
      if (alpha.minCoeff() > 1e-15) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      Eigen::Index leaving = -1;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha(i) <= 1e-15) {
          const double denom = lambda(i) - alpha(i);
          const double th = denom > 0.0 ? lambda(i) / denom : 0.0;
          if (th < theta || leaving < 0) {
            theta = th;
            leaving = i;
          }
        }
      }
      lambda = (1.0 - theta) * lambda + theta * alpha;
      lambda(leaving) = 0.0;
      std::vector<std::size_t> kept;
      std::vector<double> kept_lambda;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 1e-15) {
          kept.push_back(active[static_cast<std::size_t>(i)]);
          kept_lambda.push_back(lambda(i));
        }
      }
      active = kept;
      lambda = Eigen::Map<const Vector>(kept_lambda.data(), static_cast<Eigen::Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      if (active.size() <= 1) break;
    }
    x.setZero();
    for (std::size_t i = 0; i < active.size(); ++i) x += lambda(static_cast<Eigen::Index>(i)) * q.col(static_cast<Eigen::Index>(active[i]));
  }

  for (std::size_t i = 0; i < active.size(); ++i) out.coefficients[active[i]] = lambda(static_cast<Eigen::Index>(i));
  out.point = Vector::Zero(d);
  for (std::size_t i = 0; i < n; ++i) out.point += out.coefficients[i] * points[i];
  out.distance = (out.point - y).norm();
  return out;
}

AnnulusCheck annulus_invariance_check(const BoundedSet& set, double eps, double tol) {
  const CentreResult whole = chebyshev_centre(set);
  if (!(eps > 0.0) || !(eps < whole.rho)) throw InputError("annulus_invariance_check: need 0 < eps < rho(A)");
  std::vector<Vector> annulus;
  for (const auto& a : set.points()) {
    if (distance(set.space(), a, whole.centre) >= whole.rho - eps) annulus.push_back(a);
  }
  if (annulus.empty()) throw InvariantViolation("annulus_invariance_check: annulus is empty");
  AnnulusCheck out;
  out.annulus_size = annulus.size();
  const CentreResult part = chebyshev_centre(BoundedSet(set.space(), std::move(annulus)));
  out.centre_shift = distance(set.space(), part.centre, whole.centre);
  out.holds = out.centre_shift <= tol;
  return out;
}

BoundCheck stability_bound_check(const BoundedSet& a, const BoundedSet& b, double eps, double tol) {
  if (!a.contains_all(b)) throw InputError("stability_bound_check: B is not a subset of A");
  const double k = kappa(a.space(), eps);
  const CentreResult za = chebyshev_centre(a);
  const CentreResult zb = chebyshev_centre(b);
  BoundCheck out;
  out.lhs = distance(a.space(), za.centre, zb.centre);
  out.bound = eps * za.rho + k * (za.rho - zb.rho);
  out.holds = out.lhs <= out.bound + tol;
  return out;
}

BoundCheck hilbert_nested_bound_check(const BoundedSet& a, const BoundedSet& b, double tol) {
  if (!a.space().is_hilbert()) throw InputError("hilbert_nested_bound_check: space is not Hilbert");
  if (!a.contains_all(b)) throw InputError("hilbert_nested_bound_check: B is not a subset of A");
  const CentreResult za = chebyshev_centre(a);
  const CentreResult zb = chebyshev_centre(b);
  BoundCheck out;
  out.lhs = (za.centre - zb.centre).norm();
  out.bound = std::sqrt(std::max(0.0, za.rho * za.rho - zb.rho * zb.rho));
  out.holds = out.lhs <= out.bound + tol;
  return out;
}

EquivarianceCheck centre_equivariance_check(const BoundedSet& set, const Isometry& u, double tol) {
  const auto d = set.space().dim();
  if (u.linear.rows() != d || u.linear.cols() != d || u.translation.size() != d) {
    throw InputError("centre_equivariance_check: isometry has the wrong shape");
  }
  if ((u.linear.transpose() * u.linear - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
    throw InputError("centre_equivariance_check: linear part is not orthogonal");
  }
  std::vector<Vector> moved;
  moved.reserve(set.size());
  for (const auto& p : set.points()) moved.push_back(u.apply(p));
  const CentreResult before = chebyshev_centre(set);
  const CentreResult after = chebyshev_centre(BoundedSet(set.space(), std::move(moved)));
  EquivarianceCheck out;
  out.distance = distance(set.space(), after.centre, u.apply(before.centre));
  out.holds = out.distance <= tol;
  return out;
}

WeightedSet::WeightedSet(SpaceSpec space, std::vector<Vector> atoms, std::vector<double> weights)
    : space_(space), atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw InputError("weighted set must have at least one atom");
  if (atoms_.size() != weights_.size()) throw InputError("weighted set: atom and weight counts differ");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    space_.check_point(atoms_[i]);
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) throw InputError("weighted set: weights must be finite and nonnegative");
    total_ += weights_[i];
  }
  if (!(total_ > 0.0)) throw InputError("weighted set: total weight must be positive");
}

std::vector<std::vector<std::size_t>> refine_partition(const WeightedSet& mu, int depth) {
  if (depth < 0) throw InputError("refine_partition: depth must be nonnegative");
  std::vector<std::size_t> all(mu.atoms().size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<std::size_t>> cells{all};
  const auto& atoms = mu.atoms();
  for (int level = 0; level < depth; ++level) {
    bool changed = false;
    std::vector<std::vector<std::size_t>> next;
    next.reserve(cells.size() * 2);
    for (auto& cell : cells) {
      if (cell.size() < 2) {
        next.push_back(std::move(cell));
        continue;
      }
      Eigen::Index axis = 0;
      double spread = 0.0;
      for (Eigen::Index j = 0; j < mu.space().dim(); ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (auto i : cell) {
          lo = std::min(lo, atoms[i](j));
          hi = std::max(hi, atoms[i](j));
        }
        if (hi - lo > spread) {
          spread = hi - lo;
          axis = j;
        }
      }
      if (spread == 0.0) {
        next.push_back(std::move(cell));
        continue;
      }
      std::stable_sort(cell.begin(), cell.end(), [&](std::size_t a, std::size_t b) { return atoms[a](axis) < atoms[b](axis); });
      const auto half = static_cast<std::ptrdiff_t>(cell.size() / 2);
      next.emplace_back(cell.begin(), cell.begin() + half);
      next.emplace_back(cell.begin() + half, cell.end());
      changed = true;
    }
    cells = std::move(next);
    if (!changed) break;
  }
  return cells;
}

Vector mean_centre(const WeightedSet& mu, int depth) {
  const auto cells = refine_partition(mu, depth);
  Vector acc = Vector::Zero(mu.space().dim());
  for (const auto& cell : cells) {
    double mass = 0.0;
    std::vector<Vector> pts;
    pts.reserve(cell.size());
    for (auto i : cell) {
      mass += mu.weights()[i];
      pts.push_back(mu.atoms()[i]);
    }
    if (mass == 0.0) continue;
    acc += mass * chebyshev_centre(BoundedSet(mu.space(), std::move(pts))).centre;
  }
  return acc / mu.total_weight();
}

namespace {

void check_orthonormal(std::span<const Vector> basis, Eigen::Index dim) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != dim) throw InputError("subspace basis vector has the wrong dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(basis[i].dot(basis[j]) - expected) > 1e-9) throw InputError("subspace basis is not orthonormal");
    }
  }
}

std::vector<Vector> project_all(const std::vector<Vector>& pts, std::span<const Vector> basis) {
  std::vector<Vector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(project_out(p, basis));
  return out;
}

// Top principal direction of the point cloud, with a deterministic sign.
std::pair<Vector, double> principal_direction(const std::vector<Vector>& pts) {
  const Eigen::Index d = pts.front().size();
  Vector mean = Vector::Zero(d);
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Matrix cov = Matrix::Zero(d, d);
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  cov /= static_cast<double>(pts.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  Vector v = es.eigenvectors().col(d - 1);
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v(idx) < 0.0) v = -v;
  return {v, es.eigenvalues()(d - 1)};
}

}  // namespace

Vector project_out(const Vector& x, std::span<const Vector> basis) {
  Vector out = x;
  for (const auto& v : basis) out -= v.dot(x) * v;
  return out;
}

double s_value(const BoundedSet& set, std::span<const Vector> basis) {
  if (!set.space().is_hilbert()) throw InputError("s_value: space is not Hilbert");
  check_orthonormal(basis, set.space().dim());
  return chebyshev_centre(BoundedSet(set.space(), project_all(set.points(), basis))).rho;
}

ShoppingResult shopping_centre(const BoundedSet& set, const ShoppingConfig& cfg) {
  const auto& space = set.space();
  if (!space.is_hilbert()) throw InputError("shopping_centre: space is not Hilbert");
  if (cfg.subspace_budget < 0 || cfg.subspace_budget >= space.dim()) {
    throw InputError("shopping_centre: subspace budget must lie in [0, dim)");
  }
  if (cfg.eps_schedule.empty()) throw InputError("shopping_centre: empty eps schedule");
  for (std::size_t i = 0; i < cfg.eps_schedule.size(); ++i) {
    if (!(cfg.eps_schedule[i] > 0.0)) throw InputError("shopping_centre: eps values must be positive");
    if (i > 0 && cfg.eps_schedule[i] > cfg.eps_schedule[i - 1]) throw InputError("shopping_centre: eps schedule must be decreasing");
  }
  if (!(cfg.tol > 0.0)) throw InputError("shopping_centre: tol must be positive");

  ShoppingResult out;
  const auto& pts = set.points();
  const CentreResult plain = chebyshev_centre(set);
  double s_hat = plain.rho;
  if (s_hat <= cfg.tol) {
    out.point = plain.centre;
    out.s_estimate = 0.0;
    out.final_eps = cfg.eps_schedule.back();
    return out;
  }

  std::vector<Vector> basis;
  Vector z = plain.centre;
  for (double eps : cfg.eps_schedule) {
    std::vector<Vector> projected = project_all(pts, basis);
    if (static_cast<int>(basis.size()) < cfg.subspace_budget) {
      auto [dir, variance] = principal_direction(projected);
      if (variance > 1e-14) {
        basis.push_back(dir);
        projected = project_all(pts, basis);
      }
    }
    const CentreResult pc = chebyshev_centre(BoundedSet(space, projected));
    s_hat = std::min(s_hat, pc.rho);
    out.s_trace.push_back(pc.rho);
    out.final_eps = eps;

    std::vector<Vector> far_proj;
    std::vector<std::size_t> far_idx;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if ((projected[i] - pc.centre).norm() >= s_hat - eps / 2.0) {
        far_proj.push_back(projected[i]);
        far_idx.push_back(i);
      }
    }
    if (far_proj.empty()) throw InvariantViolation("shopping_centre: empty far annulus");
    const HullProjection hp = project_onto_hull(far_proj, pc.centre);
    z = Vector::Zero(space.dim());
    for (std::size_t k = 0; k < far_idx.size(); ++k) z += hp.coefficients[k] * pts[far_idx[k]];
  }

  std::vector<Vector> members;
  for (const auto& v : pts) {
    if (project_out(Vector(v - z), basis).norm() >= s_hat - out.final_eps) members.push_back(v);
  }
  out.point = z;
  out.s_estimate = s_hat;
  out.subspace = basis;
  out.hull_distance = members.empty() ? std::numeric_limits<double>::infinity() : project_onto_hull(members, z).distance;
  if (!(out.hull_distance <= cfg.tol)) {
    std::ostringstream msg;
    msg << "shopping_centre: final membership residual " << out.hull_distance << " exceeds tol " << cfg.tol;
    throw ConvergenceError(msg.str(), to_std(z));
  }
  return out;
}

BoundedSet far_pair_example(int dim) {
  if (dim < 2) throw InputError("far_pair_example: dimension must be >= 2");
  std::vector<Vector> pts;
  for (int i = 0; i < dim; ++i) {
    pts.push_back(Vector::Unit(dim, i));
    pts.push_back(-Vector::Unit(dim, i));
  }
  Vector far = Vector::Unit(dim, 1);
  far(0) = 10.0;
  pts.push_back(far);
  far(0) = -10.0;
  pts.push_back(far);
  return BoundedSet(SpaceSpec::hilbert(dim), std::move(pts));
}

MallReport mall_compactness_demo(int dim, const ShoppingConfig& cfg) {
  if (dim < 3) throw InputError("mall_compactness_demo: dimension must be >= 3");
  MallReport report;
  report.dim = dim;
  const BoundedSet base = far_pair_example(dim);
  std::vector<BoundedSet> copies;
  for (int n = 1; n < dim; ++n) {
    std::vector<Vector> swapped;
    for (const auto& p : base.points()) {
      Vector q = p;
      std::swap(q(1), q(n));
      swapped.push_back(q);
    }
    copies.emplace_back(base.space(), std::move(swapped));
    report.centres.push_back(chebyshev_centre(copies.back()).centre);
  }
  report.min_pairwise = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.centres.size(); ++i) {
    for (std::size_t j = i + 1; j < report.centres.size(); ++j) {
      const double dist = (report.centres[i] - report.centres[j]).norm();
      report.min_pairwise = std::min(report.min_pairwise, dist);
      report.max_pairwise = std::max(report.max_pairwise, dist);
    }
  }
  if (report.centres.size() < 2) report.min_pairwise = 0.0;

  if (dim < 10) {
    report.degenerate = true;
    report.note = "ambient dimension below 10: in finite dimension every bounded set is relatively compact, "
                  "so s = 0 and the shopping-centre comparison is not meaningful";
    return report;
  }
  for (const auto& copy : copies) {
    const ShoppingResult sr = shopping_centre(copy, cfg);
    report.max_shopping_norm = std::max(report.max_shopping_norm, sr.point.norm());
    report.shopping_points.push_back(sr.point);
    report.shopping_estimates.push_back(sr.s_estimate);
  }
  return report;
}

}  // namespace coarsefp
