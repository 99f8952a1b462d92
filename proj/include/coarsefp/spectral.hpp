#pragma once

#include "coarsefp/groups.hpp"
#include "coarsefp/metric.hpp"

#include <limits>
#include <string>
#include <vector>

namespace coarsefp {

/// Spectral data of the averaging operator M_S = (1/|S|) sum_s s on L^2(G).
struct SpectralReport {
  std::string label;
  int order = 0;
  int generators = 0;
  std::vector<double> eigenvalues;  // ascending, with multiplicity
  /// Largest h with spectrum in [h-1, 1-h] u {1}.
  double h_gap = 0.0;
  /// 1 - (largest eigenvalue below 1).
  double one_sided_gap = 0.0;
  /// Smallest nonzero eigenvalue of the Laplacian |S|(I - M_S); +inf when there is none.
  double gamma = std::numeric_limits<double>::infinity();
  /// sqrt(2 gamma / |S|): lower bound for the Kazhdan constant of (G, S).
  double kazhdan_lower = std::numeric_limits<double>::infinity();
};

/// Eigenvalues within this distance of 1 are counted as the trivial eigenvalue.
inline constexpr double kUnitEigenTol = 1e-9;

Matrix averaging_operator(const FiniteGroup& g);

/// Laplacian |S| I - adjacency.
Matrix laplacian(const FiniteGroup& g);

/// Ascending eigenvalues of a symmetric matrix. Throws InputError if asymmetric beyond 1e-9.
std::vector<double> spectrum(const Matrix& m);

/// Gap quantities of an M_S spectrum, shared by direct and product computations.
double two_sided_gap(const std::vector<double>& eigenvalues);
double one_sided_gap(const std::vector<double>& eigenvalues);

SpectralReport spectral_report(const FiniteGroup& g, int cap = kDefaultOrderCap);

struct ExpanderVerdict {
  std::vector<SpectralReport> members;
  double inf_h_gap = 0.0;
  double inf_one_sided_gap = 0.0;
  double threshold = 0.0;
  bool expander = false;
};
/// Member spectra are computed on a worker pool; results keep the family order.
ExpanderVerdict expander_check(const GroupFamily& family, double threshold, int cap = kDefaultOrderCap,
                               unsigned workers = 0);

struct TensorGapReport {
  std::vector<double> product_spectrum;  // pairwise products of factor eigenvalues, ascending
  double epsilon = 0.0;                  // min of the factor h_gaps
  bool contained = false;                // spectrum in [eps-1, 1-eps] u {1} with 1e-9 slack
  bool degenerate = false;               // epsilon == 0, containment is vacuous
};
TensorGapReport tensor_gap_check(const FiniteGroup& g1, const FiniteGroup& g2, int cap = kDefaultOrderCap);
TensorGapReport tensor_gap_check(const SpectralReport& r1, const SpectralReport& r2);

/// True iff every Laplacian eigenvalue lambda is 0 or >= gamma (both up to 1e-8).
bool gap_certificate(const FiniteGroup& g, double gamma);
bool gap_certificate(const std::vector<double>& laplacian_spectrum, double gamma);

}  // namespace coarsefp
