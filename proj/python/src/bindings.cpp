#include "coarsefp/actions.hpp"
#include "coarsefp/bounded_product.hpp"
#include "coarsefp/centres.hpp"
#include "coarsefp/error.hpp"
#include "coarsefp/homeo.hpp"
#include "coarsefp/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace coarsefp;

namespace {

std::vector<Vector> rows_of(const Eigen::Ref<const Matrix>& pts) {
  if (pts.rows() == 0) throw InputError("expected at least one point");
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) out.push_back(pts.row(i).transpose());
  return out;
}

SpaceSpec space_for(int dim, std::optional<double> p) {
  return p ? SpaceSpec::lp(*p, dim) : SpaceSpec::hilbert(dim);
}

py::dict report_dict(const SpectralReport& r) {
  py::dict d;
  d["label"] = r.label;
  d["order"] = r.order;
  d["generators"] = r.generators;
  d["eigenvalues"] = r.eigenvalues;
  d["h_gap"] = r.h_gap;
  d["one_sided_gap"] = r.one_sided_gap;
  d["gamma"] = r.gamma;
  d["kazhdan_lower"] = r.kazhdan_lower;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixed-point and spectral-gap computations";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def(
      "chebyshev_centre",
      [](const Eigen::Ref<const Matrix>& points, std::optional<double> p) {
        const auto r = chebyshev_centre(BoundedSet(space_for(static_cast<int>(points.cols()), p), rows_of(points)));
        return py::make_tuple(r.centre, r.rho);
      },
      py::arg("points"), py::arg("p") = py::none(),
      "Chebyshev centre and radius of the rows of `points`; Euclidean unless `p` is given.");

  m.def(
      "mean_centre",
      [](const Eigen::Ref<const Matrix>& points, std::vector<double> weights, int depth) {
        return mean_centre(WeightedSet(SpaceSpec::hilbert(static_cast<int>(points.cols())), rows_of(points),
                                       std::move(weights)),
                           depth);
      },
      py::arg("points"), py::arg("weights"), py::arg("depth") = kFullRefinement);

  m.def(
      "spectral_report", [](const std::string& spec, int cap) { return report_dict(spectral_report(build_group(spec, cap), cap)); },
      py::arg("group"), py::arg("cap") = kDefaultOrderCap);

  m.def(
      "expander_check",
      [](const std::string& family, double threshold, int cap) {
        const auto v = expander_check(build_family(family, cap), threshold, cap);
        py::dict d;
        py::list members;
        for (const auto& r : v.members) members.append(report_dict(r));
        d["members"] = members;
        d["inf_h_gap"] = v.inf_h_gap;
        d["inf_one_sided_gap"] = v.inf_one_sided_gap;
        d["expander"] = v.expander;
        return d;
      },
      py::arg("family"), py::arg("threshold") = 0.05, py::arg("cap") = kDefaultOrderCap);

  m.def(
      "homeo_certificate",
      [](int max_n) {
        const auto c = commutator_certificate(max_n);
        py::dict d;
        d["ab_at_0"] = to_string(c.ab_at_0);
        d["ba_inv_at_half"] = to_string(c.ba_inv_at_half);
        std::vector<std::string> powers;
        for (const auto& x : c.w_powers_at_0) powers.push_back(to_string(x));
        d["w_powers_at_0"] = powers;
        d["holds"] = c.holds;
        return d;
      },
      py::arg("max_n") = 100);

  m.def(
      "fixed_point_search",
      [](const std::string& action_json, double alpha, double R, int max_iters, std::uint64_t seed) {
        const auto a = AffineAction::from_json(nlohmann::json::parse(action_json));
        DescentConfig cfg;
        cfg.alpha = alpha;
        cfg.R = R;
        cfg.max_iters = max_iters;
        cfg.seed = seed;
        const auto r = fixed_point_search(a, cfg);
        py::dict d;
        d["status"] = r.status == DescentResult::Status::converged ? "converged" : "witness";
        d["point"] = r.point;
        d["displacement"] = r.displacement;
        d["iterations"] = r.iterations;
        d["witness_min"] = r.witness_min;
        return d;
      },
      py::arg("action_json"), py::arg("alpha") = 0.5, py::arg("R") = 2.0, py::arg("max_iters") = 10000,
      py::arg("seed") = 0);

  m.def(
      "gaussian_embedding",
      [](const Eigen::Ref<const Matrix>& points, double t) {
        const auto e = gaussian_embedding(rows_of(points), t);
        return py::make_tuple(e.gram, e.factor, e.min_eigenvalue);
      },
      py::arg("points"), py::arg("t"));

  m.def(
      "cocycle_growth",
      [](const std::string& family, int level, std::vector<int> lengths) {
        const auto g = unbounded_cocycle_demo(build_family(family), level, lengths);
        py::list rows;
        for (const auto& row : g.table) rows.append(py::make_tuple(row.m, row.norm));
        py::dict d;
        d["table"] = rows;
        d["max_generator_norm"] = g.max_generator_norm;
        d["strictly_increasing"] = g.strictly_increasing;
        d["cocycle_error"] = g.cocycle_error;
        return d;
      },
      py::arg("family"), py::arg("level"), py::arg("lengths"));
}
