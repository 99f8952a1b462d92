// coarsefp: command-line front end.
//
// Every report is a JSON document carrying the run manifest. Exit codes: 0 success,
// 1 invariant or assertion failure, 2 input error, 3 resource cap exceeded.

#include "coarsefp/actions.hpp"
#include "coarsefp/bounded_product.hpp"
#include "coarsefp/centres.hpp"
#include "coarsefp/error.hpp"
#include "coarsefp/groups.hpp"
#include "coarsefp/homeo.hpp"
#include "coarsefp/io.hpp"
#include "coarsefp/rng.hpp"
#include "coarsefp/spectral.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace coarsefp;

namespace {

struct Globals {
  double tol = 1e-9;
  double threshold = 0.05;
  std::uint64_t seed = 0;
  int cap = kDefaultOrderCap;
  std::string out;
};

json num(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

json manifest(const std::string& sub, const std::vector<std::string>& inputs, const Globals& g) {
  return {{"tool", "coarsefp"},
          {"version", "0.1.0"},
          {"subcommand", sub},
          {"inputs", inputs},
          {"seed", g.seed},
          {"tolerances", {{"tol", g.tol}, {"threshold", g.threshold}}},
          {"cap", g.cap},
          {"output", g.out.empty() ? "-" : g.out}};
}

void emit(const json& report, const Globals& g) {
  const std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + g.out + "'");
  f << text;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << std::setprecision(17);
  return f;
}

int exit_for(bool ok) { return ok ? 0 : 1; }

// ---------------------------------------------------------------- centres

struct CentresArgs {
  std::vector<std::string> files;
  std::string check;
  double p = 2.0;
  double eps = 0.5;
};

SpaceSpec space_for(double p, int dim) { return p == 2.0 ? SpaceSpec::hilbert(dim) : SpaceSpec::lp(p, dim); }

json centre_json(const CentreResult& c) {
  return {{"centre", vector_json(c.centre)},
          {"rho", c.rho},
          {"iterations", c.iterations},
          {"residual", c.residual},
          {"support_size", c.support_size}};
}

int run_centres(const CentresArgs& a, const Globals& g) {
  json report;
  report["manifest"] = manifest("centres", a.files, g);
  bool ok = true;
  if (a.check.empty()) {
    if (a.files.size() != 1) throw InputError("centres expects one point file (or --check nested A B)");
    const auto pts = read_points(a.files[0]);
    const BoundedSet set(space_for(a.p, static_cast<int>(pts.front().size())), pts);
    const CentreResult c = chebyshev_centre(set, g.tol);
    report["space"] = set.space().describe();
    report["points"] = set.size();
    report["result"] = centre_json(c);
    // Audit: drop the point farthest from the centre and check the nested bounds.
    if (set.size() >= 2) {
      std::size_t far = 0;
      for (std::size_t i = 1; i < set.size(); ++i) {
        if (distance(set.space(), pts[i], c.centre) > distance(set.space(), pts[far], c.centre)) far = i;
      }
      std::vector<Vector> sub;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i != far) sub.push_back(pts[i]);
      }
      const BoundedSet b(set.space(), sub);
      const BoundCheck st = stability_bound_check(set, b, a.eps);
      json audit = {{"removed_index", far},
                    {"eps", a.eps},
                    {"stability", {{"lhs", st.lhs}, {"bound", st.bound}, {"holds", st.holds}}}};
      ok = ok && st.holds;
      if (set.space().is_hilbert()) {
        const BoundCheck h = hilbert_nested_bound_check(set, b);
        audit["hilbert"] = {{"lhs", h.lhs}, {"bound", h.bound}, {"holds", h.holds}};
        ok = ok && h.holds;
      }
      report["audit"] = audit;
    }
  } else {
    if (a.check != "nested") throw InputError("unknown check '" + a.check + "' (expected 'nested')");
    if (a.files.size() != 2) throw InputError("--check nested needs two point files A B");
    const auto pa = read_points(a.files[0]);
    const auto pb = read_points(a.files[1]);
    if (pa.front().size() != pb.front().size()) throw InputError("A and B have different dimensions");
    const auto space = space_for(a.p, static_cast<int>(pa.front().size()));
    const BoundedSet sa(space, pa);
    const BoundedSet sb(space, pb);
    if (!sa.contains_all(sb)) throw InputError("B is not a subset of A");
    report["space"] = space.describe();
    report["A"] = centre_json(chebyshev_centre(sa, g.tol));
    report["B"] = centre_json(chebyshev_centre(sb, g.tol));
    const BoundCheck st = stability_bound_check(sa, sb, a.eps);
    report["stability"] = {{"eps", a.eps}, {"lhs", st.lhs}, {"bound", st.bound}, {"holds", st.holds}};
    ok = st.holds;
    if (space.is_hilbert()) {
      const BoundCheck h = hilbert_nested_bound_check(sa, sb);
      report["hilbert"] = {{"lhs", h.lhs}, {"bound", h.bound}, {"holds", h.holds}};
      report["verdict"] = h.holds;
      ok = ok && h.holds;
    } else {
      report["verdict"] = st.holds;
    }
  }
  report["ok"] = ok;
  emit(report, g);
  return exit_for(ok);
}

// ---------------------------------------------------------------- spectra

struct SpectraArgs {
  std::string family;
  std::string csv;
  std::string dump_dir;
  unsigned workers = 0;
};

int run_spectra(const SpectraArgs& a, const Globals& g) {
  const GroupFamily fam = build_family(a.family, g.cap);
  const ExpanderVerdict v = expander_check(fam, g.threshold, g.cap, a.workers);
  json members = json::array();
  bool ok = true;
  std::ofstream csv;
  if (!a.csv.empty()) {
    csv = open_csv(a.csv);
    csv << "label,order,generators,h_gap,one_sided_gap,gamma,kazhdan_lower\n";
  }
  if (!a.dump_dir.empty()) std::filesystem::create_directories(a.dump_dir);
  for (std::size_t i = 0; i < v.members.size(); ++i) {
    const auto& r = v.members[i];
    // Checked invariants: spectrum in [-1, 1] with top eigenvalue 1, and the gap certificate at gamma.
    const bool range_ok = !r.eigenvalues.empty() && r.eigenvalues.front() >= -1.0 - g.tol &&
                          std::abs(r.eigenvalues.back() - 1.0) <= 1e-9;
    const bool cert_ok = gap_certificate(fam.members[i], std::isfinite(r.gamma) ? r.gamma : 0.0);
    ok = ok && range_ok && cert_ok;
    members.push_back({{"label", r.label},
                       {"order", r.order},
                       {"generators", r.generators},
                       {"h_gap", r.h_gap},
                       {"one_sided_gap", r.one_sided_gap},
                       {"gamma", num(r.gamma)},
                       {"kazhdan_lower", num(r.kazhdan_lower)},
                       {"spectrum_ok", range_ok},
                       {"gap_certificate", cert_ok}});
    if (csv.is_open()) {
      csv << '"' << r.label << "\"," << r.order << ',' << r.generators << ',' << r.h_gap << ',' << r.one_sided_gap << ','
          << r.gamma << ',' << r.kazhdan_lower << '\n';
    }
    if (!a.dump_dir.empty()) {
      std::string name = r.label;
      for (char& c : name) {
        if (c == ':' || c == ',' || c == '/') c = '_';
      }
      std::ofstream f = open_csv((std::filesystem::path(a.dump_dir) / (std::to_string(i) + "_" + name + ".csv")).string());
      write_spectrum_csv(f, r.eigenvalues);
    }
  }
  json report = {{"manifest", manifest("spectra", {a.family}, g)},
                 {"family", fam.label},
                 {"members", members},
                 {"inf_h_gap", v.inf_h_gap},
                 {"inf_one_sided_gap", v.inf_one_sided_gap},
                 {"threshold", v.threshold},
                 {"verdict", v.expander ? "expander" : "non-expander"},
                 {"ok", ok}};
  emit(report, g);
  return exit_for(ok);
}

// ---------------------------------------------------------------- product

struct ProductArgs {
  std::string demo;
  std::string family;
  int level = 0;
  std::vector<int> lengths{1, 2, 4, 8, 16, 32, 64};
  int steps = 50000;
  int k0 = 0;
  std::string csv;
};

int run_product(const ProductArgs& a, const Globals& g) {
  json report;
  bool ok = true;
  if (a.demo == "unbounded-cocycle") {
    const std::string spec = a.family.empty() ? "cyclic:16,32,64,128,256,512" : a.family;
    const GroupFamily fam = build_family(spec, g.cap);
    const int level = a.level > 0 ? a.level : static_cast<int>(fam.members.size());
    const CocycleGrowth r = unbounded_cocycle_demo(fam, level, a.lengths, g.cap, g.threshold, g.seed);
    json table = json::array();
    for (const auto& row : r.table) table.push_back({{"m", row.m}, {"norm", row.norm}});
    const bool generators_ok = r.max_generator_norm < 1.0;
    const bool cocycle_ok = r.cocycle_error <= 1e-9;
    ok = generators_ok && cocycle_ok && r.monotone && r.strictly_increasing;
    report = {{"manifest", manifest("product", {"unbounded-cocycle", spec}, g)},
              {"level", level},
              {"member_orders", r.member_orders},
              {"member_displacements", r.member_displacements},
              {"schedule_met", r.schedule_met},
              {"max_generator_norm", r.max_generator_norm},
              {"table", table},
              {"checks",
               {{"generator_norm_below_1", generators_ok},
                {"cocycle_identity", cocycle_ok},
                {"monotone", r.monotone},
                {"strictly_increasing", r.strictly_increasing}}},
              {"cocycle_error", r.cocycle_error},
              {"ok", ok}};
    if (!a.csv.empty()) {
      auto f = open_csv(a.csv);
      f << "m,norm\n";
      for (const auto& row : r.table) f << row.m << ',' << row.norm << '\n';
    }
  } else if (a.demo == "iteration") {
    const std::string spec = a.family.empty() ? "cyclic:3;cyclic:3" : a.family;
    const GroupFamily fam = build_family(spec, g.cap);
    const int level = a.level > 0 ? a.level : static_cast<int>(fam.members.size());
    const BlockRepresentation rep(TruncatedProduct(fam, level, g.cap), g.cap);
    const int k0 = a.k0 > 0 ? a.k0 : minimal_k0(rep.product());
    // v0 = normalised (1 + perturbation), the perturbation scaled to make v0 1/k0-invariant.
    Rng rng = make_rng(g.seed);
    std::normal_distribution<double> n01;
    Vector pert(rep.dim());
    for (int i = 0; i < rep.dim(); ++i) pert[i] = n01(rng);
    const Vector ones = Vector::Ones(rep.dim());
    Vector v0 = ones + 0.1 * pert / pert.norm();
    v0 /= v0.norm();
    double scale = 0.1;
    while (sup_displacement(rep, v0) > 1.0 / k0) {
      scale /= 2.0;
      v0 = ones + scale * pert / pert.norm();
      v0 /= v0.norm();
    }
    const IterationResult r = almost_invariant_iteration(rep, v0, k0, a.steps);
    double worst = 0.0;
    for (const auto& st : r.trace) worst = std::max(worst, st.step_norm / st.bound);
    ok = r.final_sup_displacement <= 10 * g.tol;
    report = {{"manifest", manifest("product", {"iteration", spec}, g)},
              {"h", r.h},
              {"k0", r.k0},
              {"steps", a.steps},
              {"max_step_to_bound_ratio", worst},
              {"final_sup_displacement", r.final_sup_displacement},
              {"distance_to_limit", r.distance_to_limit},
              {"limit_invariant", ok},
              {"ok", ok}};
    if (!a.csv.empty()) {
      auto f = open_csv(a.csv);
      f << "k,step_norm,bound,sup_displacement\n";
      for (const auto& st : r.trace) f << st.k << ',' << st.step_norm << ',' << st.bound << ',' << st.sup_displacement << '\n';
    }
  } else {
    throw InputError("unknown demo '" + a.demo + "' (expected unbounded-cocycle or iteration)");
  }
  emit(report, g);
  return exit_for(ok);
}

// ---------------------------------------------------------------- actions

struct ActionsArgs {
  std::string mode;
  std::string file;
  double alpha = 0.5;
  double R = 2.0;
  int max_iters = 10000;
  int samples = 1000;
  std::vector<double> start;
  double t = 1.0;
  std::string csv;
};

int run_actions(const ActionsArgs& a, const Globals& g) {
  json report;
  bool ok = true;
  if (a.mode == "gaussian") {
    const auto pts = read_points(a.file);
    const GaussianEmbedding e = gaussian_embedding(pts, a.t);
    ok = e.min_eigenvalue >= -1e-9 && e.residual <= 1e-8;
    report = {{"manifest", manifest("actions", {a.mode, a.file}, g)},
              {"t", a.t},
              {"points", pts.size()},
              {"min_eigenvalue", e.min_eigenvalue},
              {"factor_residual", e.residual},
              {"ok", ok}};
    emit(report, g);
    return exit_for(ok);
  }
  const AffineAction action = AffineAction::from_json(read_json_file(a.file));
  report["manifest"] = manifest("actions", {a.mode, a.file}, g);
  if (a.mode == "descend") {
    DescentConfig cfg;
    cfg.alpha = a.alpha;
    cfg.R = a.R;
    cfg.tol = g.tol;
    cfg.max_iters = a.max_iters;
    cfg.ball_samples = a.samples;
    cfg.seed = g.seed;
    Vector x0 = Vector::Zero(action.dim());
    if (!a.start.empty()) {
      if (static_cast<int>(a.start.size()) != action.dim()) throw InputError("--start has the wrong dimension");
      x0 = Eigen::Map<const Vector>(a.start.data(), action.dim());
    }
    const DescentResult r = fixed_point_search(action, x0, cfg);
    const bool converged = r.status == DescentResult::Status::converged;
    report["status"] = converged ? "converged" : "witness";
    report["point"] = vector_json(r.point);
    report["displacement"] = r.displacement;
    report["iterations"] = r.iterations;
    if (!converged) {
      report["witness"] = {{"sampled_min_displacement", r.witness_min},
                           {"alpha_times_d", a.alpha * r.displacement},
                           {"samples", r.witness_samples},
                           {"note", "sample-based evidence of positive displacement, not a proof"}};
    }
    if (!a.csv.empty()) {
      auto f = open_csv(a.csv);
      f << "n,displacement,step\n";
      for (const auto& st : r.trace) f << st.n << ',' << st.displacement << ',' << st.step << '\n';
    }
  } else if (a.mode == "cocycle") {
    const CocycleCheck c = cocycle_check(action, a.samples, g.seed);
    const LipschitzCheck l = lipschitz_check(action, a.samples, g.seed);
    report["cocycle"] = {{"samples", c.samples}, {"max_error", c.max_error}, {"holds", c.holds}};
    report["lipschitz"] = {{"pairs", l.pairs}, {"max_excess", l.max_excess}, {"holds", l.holds}};
    ok = c.holds && l.holds;
  } else if (a.mode == "coboundary") {
    const auto v = coboundary_solve(action);
    if (v) {
      const double d = displacement(action, *v);
      report["coboundary"] = true;
      report["fixed_point"] = vector_json(*v);
      report["displacement"] = d;
      ok = d <= 1e-6;
    } else {
      report["coboundary"] = false;
      report["fixed_point"] = nullptr;
    }
  } else {
    throw InputError("unknown actions mode '" + a.mode + "' (expected descend, cocycle, coboundary or gaussian)");
  }
  report["ok"] = ok;
  emit(report, g);
  return exit_for(ok);
}

// ---------------------------------------------------------------- homeo

int run_homeo(int max_n, const Globals& g) {
  const HomeoCertificate c = commutator_certificate(max_n);
  const PLLift a = lift_a();
  const PLLift b = lift_b();
  const OBCheck ob = ob_bounded_check({a, b, invert(a), invert(b)}, Rational(1));
  json report = {{"manifest", manifest("homeo", {}, g)},
                 {"a", a.to_json()},
                 {"b", b.to_json()},
                 {"certificate", to_json(c)},
                 {"generators_bounded", {{"max_abs_at_0", to_string(ob.max_abs)}, {"bounded", ob.bounded}}},
                 {"ok", c.holds}};
  emit(report, g);
  return exit_for(c.holds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarsefp: centres, spectral gaps, bounded products and affine actions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Comparison / solver tolerance")->capture_default_str();
  app.add_option("--threshold", g.threshold, "Spectral gap threshold")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--cap", g.cap, "Cap on group orders and representation sizes")->capture_default_str();
  app.add_option("--out", g.out, "Write the JSON report here instead of stdout");

  CentresArgs ca;
  auto* centres = app.add_subcommand("centres", "Chebyshev centre of a point set, with a nested-bound audit");
  centres->add_option("files", ca.files, "Point file(s): CSV or JSON")->required();
  centres->add_option("--check", ca.check, "'nested': check Z(A), Z(B) bounds for B inside A");
  centres->add_option("--p", ca.p, "Norm exponent (2 = Hilbert)")->capture_default_str();
  centres->add_option("--eps", ca.eps, "eps for the stability bound")->capture_default_str();

  SpectraArgs sa;
  auto* spectra = app.add_subcommand("spectra", "Spectral gaps and expander verdict for a group family");
  spectra->add_option("family", sa.family, "Family spec, e.g. cyclic:10..100:10 or sl2:3,5,7")->required();
  spectra->add_option("--csv", sa.csv, "Per-member CSV table");
  spectra->add_option("--dump-spectra", sa.dump_dir, "Directory for one eigenvalue CSV per member");
  spectra->add_option("--workers", sa.workers, "Worker threads (0 = hardware)");

  ProductArgs pa;
  auto* product = app.add_subcommand("product", "Bounded-product demonstrations");
  product->add_option("--demo", pa.demo, "unbounded-cocycle | iteration")->required();
  product->add_option("--family", pa.family, "Family spec");
  product->add_option("--level", pa.level, "Truncation level N (default: whole family)");
  product->add_option("--lengths", pa.lengths, "Word lengths m")->delimiter(',');
  product->add_option("--steps", pa.steps, "Iteration steps")->capture_default_str();
  product->add_option("--k0", pa.k0, "Starting index (default ceil(2/h))");
  product->add_option("--csv", pa.csv, "Growth table or iteration trace CSV");

  ActionsArgs aa;
  auto* actions = app.add_subcommand("actions", "Affine isometric actions");
  actions->add_option("mode", aa.mode, "descend | cocycle | coboundary | gaussian")->required();
  actions->add_option("file", aa.file, "Action JSON (gaussian: point file)")->required();
  actions->add_option("--alpha", aa.alpha, "Descent factor in (0,1)")->capture_default_str();
  actions->add_option("--R", aa.R, "Ball radius factor")->capture_default_str();
  actions->add_option("--max-iters", aa.max_iters, "Descent iteration cap")->capture_default_str();
  actions->add_option("--samples", aa.samples, "Ball samples / random checks")->capture_default_str();
  actions->add_option("--start", aa.start, "Start point, comma separated")->delimiter(',');
  actions->add_option("--t", aa.t, "Gaussian kernel parameter")->capture_default_str();
  actions->add_option("--csv", aa.csv, "Descent trace CSV");

  int max_n = 100;
  auto* homeo = app.add_subcommand("homeo", "Exact commutator certificate for PL circle-homeomorphism lifts");
  homeo->add_option("--n", max_n, "Check w^n(0) = n for n up to this")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_comparison_tolerance(g.tol);
    if (g.cap < 1) throw InputError("--cap must be positive");
    if (*centres) return run_centres(ca, g);
    if (*spectra) return run_spectra(sa, g);
    if (*product) return run_product(pa, g);
    if (*actions) return run_actions(aa, g);
    if (*homeo) return run_homeo(max_n, g);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
