#pragma once
// Independent reference computations used only by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

// Eigenvalues of the Z/n averaging operator with S = {+1, -1}: cos(2 pi k / n).
inline std::vector<double> circulant_spectrum(int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(std::cos(2.0 * std::numbers::pi * k / n));
  std::sort(out.begin(), out.end());
  return out;
}

struct Ball {
  Vec centre;
  double radius = std::numeric_limits<double>::infinity();
};

// Smallest enclosing Euclidean ball by enumerating support sets of size <= dim + 1: for each
// affinely independent subset, take its circumcentre inside its affine hull; keep the smallest
// ball that encloses every point.
inline Ball min_enclosing_ball(const std::vector<Vec>& pts) {
  const int n = static_cast<int>(pts.size());
  const int dim = static_cast<int>(pts.front().size());
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double slack = 1e-10 * std::max(1.0, scale);
  Ball best;
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    if (!idx.empty()) {
      const Vec& t0 = pts[idx[0]];
      const int k = static_cast<int>(idx.size()) - 1;
      Vec c = t0;
      bool ok = true;
      if (k > 0) {
        Eigen::MatrixXd D(dim, k);
        for (int j = 0; j < k; ++j) D.col(j) = pts[idx[j + 1]] - t0;
        Eigen::MatrixXd G = D.transpose() * D;
        Eigen::VectorXd rhs(k);
        for (int j = 0; j < k; ++j) rhs[j] = 0.5 * G(j, j);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
        if (lu.rank() < k) {
          ok = false;
        } else {
          c = t0 + D * lu.solve(rhs);
        }
      }
      if (ok) {
        const double r = (c - t0).norm();
        if (r < best.radius) {
          bool encloses = true;
          for (const auto& p : pts) {
            if ((p - c).norm() > r + slack) {
              encloses = false;
              break;
            }
          }
          if (encloses) best = {c, r};
        }
      }
    }
    if (static_cast<int>(idx.size()) == dim + 1) return;
    for (int i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return best;
}

// Minimises a convex function on a box by nested golden-section search (one level per coordinate).
inline Vec golden_minimise(const std::function<double(const Vec&)>& f, const Vec& lo, const Vec& hi, int iters = 70) {
  const int dim = static_cast<int>(lo.size());
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  Vec x = 0.5 * (lo + hi);
  std::function<double(int)> level = [&](int k) -> double {
    if (k == dim) return f(x);
    double a = lo[k];
    double b = hi[k];
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    x[k] = c;
    double fc = level(k + 1);
    x[k] = d;
    double fd = level(k + 1);
    for (int i = 0; i < iters; ++i) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        x[k] = c;
        fc = level(k + 1);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        x[k] = d;
        fd = level(k + 1);
      }
    }
    x[k] = 0.5 * (a + b);
    return level(k + 1);
  };
  level(0);
  return x;
}

// Multiset comparison of two ascending lists.
inline double max_sorted_gap(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
