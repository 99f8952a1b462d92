#include "coarsefp/spectral.hpp"

#include "coarsefp/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace coarsefp {

Matrix averaging_operator(const FiniteGroup& g) {
  return cayley_adjacency(g).cast<double>() / static_cast<double>(g.gens().size());
}

Matrix laplacian(const FiniteGroup& g) {
  const auto s = static_cast<double>(g.gens().size());
  return s * Matrix::Identity(g.order(), g.order()) - cayley_adjacency(g).cast<double>();
}

std::vector<double> spectrum(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("spectrum: matrix is not square");
  if (m.size() == 0) return {};
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) throw InputError("spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver did not converge");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Largest eigenvalue strictly below the trivial eigenvalue 1, if any.
bool largest_nontrivial(const std::vector<double>& ev, double& value) {
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) {
    if (*it < 1.0 - kUnitEigenTol) {
      value = *it;
      return true;
    }
  }
  return false;
}

}  // namespace

double two_sided_gap(const std::vector<double>& ev) {
  double top = 0.0;
  if (!largest_nontrivial(ev, top)) return 1.0;
  double h = std::min(1.0 - top, 1.0 + ev.front());
  if (h < 1e-12) h = 0.0;
  return std::min(h, 1.0);
}

double one_sided_gap(const std::vector<double>& ev) {
  double top = 0.0;
  if (!largest_nontrivial(ev, top)) return 1.0;
  return 1.0 - top;
}

SpectralReport spectral_report(const FiniteGroup& g, int cap) {
  if (g.order() > cap) {
    throw ResourceError("spectral_report: order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
  }
  SpectralReport r;
  r.label = g.label();
  r.order = g.order();
  r.generators = static_cast<int>(g.gens().size());
  r.eigenvalues = spectrum(averaging_operator(g));
  r.h_gap = two_sided_gap(r.eigenvalues);
  r.one_sided_gap = one_sided_gap(r.eigenvalues);
  double top = 0.0;
  if (largest_nontrivial(r.eigenvalues, top)) {
    r.gamma = r.generators * (1.0 - top);
    r.kazhdan_lower = std::sqrt(2.0 * r.gamma / r.generators);
  }
  return r;
}

ExpanderVerdict expander_check(const GroupFamily& family, double threshold, int cap, unsigned workers) {
  ExpanderVerdict v;
  v.threshold = threshold;
  const std::size_t n = family.members.size();
  if (n == 0) throw InputError("expander_check: empty family");
  for (const auto& g : family.members) {
    if (g.order() > cap) throw ResourceError("expander_check: member " + g.label() + " exceeds cap");
  }
  v.members.resize(n);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        v.members[i] = spectral_report(family.members[i], cap);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  v.inf_h_gap = v.members.front().h_gap;
  v.inf_one_sided_gap = v.members.front().one_sided_gap;
  for (const auto& m : v.members) {
    v.inf_h_gap = std::min(v.inf_h_gap, m.h_gap);
    v.inf_one_sided_gap = std::min(v.inf_one_sided_gap, m.one_sided_gap);
  }
  v.expander = v.inf_h_gap >= threshold;
  return v;
}

TensorGapReport tensor_gap_check(const SpectralReport& r1, const SpectralReport& r2) {
  TensorGapReport out;
  out.product_spectrum.reserve(r1.eigenvalues.size() * r2.eigenvalues.size());
  for (double a : r1.eigenvalues) {
    for (double b : r2.eigenvalues) out.product_spectrum.push_back(a * b);
  }
  std::sort(out.product_spectrum.begin(), out.product_spectrum.end());
  out.epsilon = std::min(r1.h_gap, r2.h_gap);
  out.degenerate = out.epsilon == 0.0;
  const double slack = 1e-9;
  out.contained = std::all_of(out.product_spectrum.begin(), out.product_spectrum.end(), [&](double l) {
    if (std::abs(l - 1.0) <= slack) return true;
    return l >= out.epsilon - 1.0 - slack && l <= 1.0 - out.epsilon + slack;
  });
  return out;
}

TensorGapReport tensor_gap_check(const FiniteGroup& g1, const FiniteGroup& g2, int cap) {
  return tensor_gap_check(spectral_report(g1, cap), spectral_report(g2, cap));
}

bool gap_certificate(const std::vector<double>& laplacian_spectrum, double gamma) {
  if (!(gamma >= 0.0)) throw InputError("gap_certificate: gamma must be nonnegative");
  const double tol = 1e-8;
  return std::all_of(laplacian_spectrum.begin(), laplacian_spectrum.end(),
                     [&](double l) { return std::abs(l) <= tol || l >= gamma - tol; });
}

bool gap_certificate(const FiniteGroup& g, double gamma) {
  return gap_certificate(spectrum(laplacian(g)), gamma);
}

}  // namespace coarsefp
