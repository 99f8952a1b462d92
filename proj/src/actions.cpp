#include "coarsefp/actions.hpp"

#include "coarsefp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coarsefp {

AffineMap AffineMap::identity(int dim) { return {Matrix::Identity(dim, dim), Vector::Zero(dim)}; }

AffineMap AffineMap::compose(const AffineMap& other) const {
  return {linear * other.linear, linear * other.translation + translation};
}

AffineMap AffineMap::inverse() const {
  Matrix lt = linear.transpose();
  return {lt, -(lt * translation)};
}

Word reduce_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

AffineAction::AffineAction(int dim, std::vector<ActionGenerator> generators, std::vector<std::string> relations)
    : dim_(dim), gens_(std::move(generators)), relations_(std::move(relations)) {
  if (dim_ < 1) throw InputError("action dimension must be positive");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (g.label.empty() || g.label.find_first_of(" \t^") != std::string::npos) {
      throw InputError("invalid generator label '" + g.label + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gens_[j].label == g.label) throw InputError("duplicate generator label '" + g.label + "'");
    }
    if (g.linear.rows() != dim_ || g.linear.cols() != dim_ || g.translation.size() != dim_) {
      throw InputError("generator '" + g.label + "' has the wrong shape");
    }
    if (!g.linear.allFinite() || !g.translation.allFinite()) {
      throw InputError("generator '" + g.label + "' has non-finite entries");
    }
    const double err = (g.linear.transpose() * g.linear - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (err > 1e-9) throw InputError("linear part of '" + g.label + "' is not orthogonal");
  }
  for (const auto& r : relations_) {
    const AffineMap m = word_map(parse_word(r));
    const double err = std::max((m.linear - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff(),
                                m.translation.cwiseAbs().maxCoeff());
    if (err > 1e-8) throw InputError("relation '" + r + "' does not act as the identity");
  }
}

int AffineAction::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].label == label) return static_cast<int>(i);
  }
  throw InputError("unknown generator label '" + label + "'");
}

Word AffineAction::parse_word(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto caret = token.find('^');
    const int gen = index_of(token.substr(0, caret));
    int power = 1;
    if (caret != std::string::npos) {
      const std::string exp = token.substr(caret + 1);
      std::size_t used = 0;
      try {
        power = std::stoi(exp, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != exp.size() || power == 0) throw InputError("bad exponent in word token '" + token + "'");
    }
    const int sign = power > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(power); ++k) w.push_back({gen, sign});
  }
  return w;
}

std::string AffineAction::format_word(const Word& w) const {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += gens_.at(l.gen).label;
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

AffineMap AffineAction::letter_map(const Letter& l) const {
  const auto& g = gens_.at(l.gen);
  AffineMap m{g.linear, g.translation};
  return l.sign > 0 ? m : m.inverse();
}

AffineMap AffineAction::word_map(const Word& w) const {
  AffineMap m = AffineMap::identity(dim_);
  for (const auto& l : reduce_word(w)) m = m.compose(letter_map(l));
  return m;
}

Vector AffineAction::evaluate_word(const Word& w, const Vector& v) const {
  if (v.size() != dim_) throw InputError("point dimension does not match the action");
  return word_map(w).apply(v);
}

Vector AffineAction::evaluate_word(const std::string& w, const Vector& v) const { return evaluate_word(parse_word(w), v); }

AffineAction AffineAction::from_json(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<ActionGenerator> gens;
    for (const auto& g : j.at("generators")) {
      ActionGenerator ag;
      ag.label = g.at("label").get<std::string>();
      const auto rows = g.at("matrix").get<std::vector<std::vector<double>>>();
      const auto vec = g.at("vector").get<std::vector<double>>();
      if (static_cast<int>(rows.size()) != dim || static_cast<int>(vec.size()) != dim) {
        throw InputError("generator '" + ag.label + "' does not match dim");
      }
      ag.linear.resize(dim, dim);
      for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != dim) throw InputError("generator '" + ag.label + "' matrix row length");
        for (int c = 0; c < dim; ++c) ag.linear(r, c) = rows[r][c];
      }
      ag.translation = Eigen::Map<const Vector>(vec.data(), dim);
      gens.push_back(std::move(ag));
    }
    std::vector<std::string> relations;
    if (j.contains("relations")) relations = j.at("relations").get<std::vector<std::string>>();
    return AffineAction(dim, std::move(gens), std::move(relations));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed action JSON: ") + e.what());
  }
}

nlohmann::json AffineAction::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : gens_) {
    std::vector<std::vector<double>> rows(dim_, std::vector<double>(dim_));
    for (int r = 0; r < dim_; ++r) {
      for (int c = 0; c < dim_; ++c) rows[r][c] = g.linear(r, c);
    }
    gens.push_back({{"label", g.label},
                    {"matrix", rows},
                    {"vector", std::vector<double>(g.translation.data(), g.translation.data() + dim_)}});
  }
  return {{"dim", dim_}, {"generators", gens}, {"relations", relations_}};
}

Word random_word(const AffineAction& a, int max_len, Rng& rng) {
  Word w;
  if (a.generators().empty()) return w;
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(a.generators().size()) - 1);
  std::bernoulli_distribution flip(0.5);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back({gen(rng), flip(rng) ? 1 : -1});
  return w;
}

CocycleCheck cocycle_check(const AffineAction& a, int samples, std::uint64_t seed, int max_len) {
  CocycleCheck out;
  out.samples = samples;
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Word g = random_word(a, max_len, rng);
    const Word h = random_word(a, max_len, rng);
    Word gh = g;
    gh.insert(gh.end(), h.begin(), h.end());
    // b(gh) as sigma(gh) applied to 0, one letter at a time from the right.
    Vector x = Vector::Zero(a.dim());
    for (auto it = gh.rbegin(); it != gh.rend(); ++it) x = a.letter_map(*it).apply(x);
    const AffineMap mg = a.word_map(g);
    const AffineMap mh = a.word_map(h);
    const Vector rhs = mg.linear * mh.translation + mg.translation;
    out.max_error = std::max(out.max_error, (x - rhs).cwiseAbs().maxCoeff());
  }
  out.holds = out.max_error <= 1e-9;
  return out;
}

double displacement(const AffineAction& a, const Vector& x) {
  double d = 0.0;
  for (const auto& g : a.generators()) d = std::max(d, (g.linear * x + g.translation - x).norm());
  return d;
}

LipschitzCheck lipschitz_check(const AffineAction& a, int pairs, std::uint64_t seed, double scale) {
  LipschitzCheck out;
  out.pairs = pairs;
  out.max_excess = -std::numeric_limits<double>::infinity();
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  auto draw = [&] {
    Vector v(a.dim());
    for (int i = 0; i < a.dim(); ++i) v[i] = u(rng);
    return v;
  };
  for (int i = 0; i < pairs; ++i) {
    const Vector x = draw();
    const Vector y = draw();
    const double excess = std::abs(displacement(a, x) - displacement(a, y)) - 2.0 * (x - y).norm();
    out.max_excess = std::max(out.max_excess, excess);
  }
  if (pairs == 0) out.max_excess = 0.0;
  out.holds = out.max_excess <= 1e-9;
  return out;
}

void DescentConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("descent alpha must lie in (0,1)");
  if (!(R > 0.0)) throw InputError("descent R must be positive");
  if (!(tol > 0.0)) throw InputError("descent tol must be positive");
  if (max_iters < 1) throw InputError("descent max_iters must be positive");
  if (ball_samples < 1000) throw InputError("descent needs at least 1000 ball samples");
}

namespace {

Vector sample_ball(const Vector& centre, double radius, Rng& rng) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  Vector dir(centre.size());
  for (int i = 0; i < dir.size(); ++i) dir[i] = n01(rng);
  double nd = dir.norm();
  if (nd == 0.0) return centre;
  const double r = radius * std::pow(u01(rng), 1.0 / static_cast<double>(centre.size()));
  return centre + (r / nd) * dir;
}

}  // namespace

DescentResult fixed_point_search(const AffineAction& a, const Vector& x0, const DescentConfig& cfg) {
  cfg.validate();
  if (x0.size() != a.dim()) throw InputError("start point dimension does not match the action");
  Rng rng = make_rng(cfg.seed);
  DescentResult out;
  Vector x = x0;
  double d = displacement(a, x);
  double last_step = 0.0;
  for (int n = 0; n < cfg.max_iters; ++n) {
    out.trace.push_back({n, d, last_step});
    if (d <= cfg.tol) {
      out.status = DescentResult::Status::converged;
      out.point = x;
      out.displacement = d;
      out.iterations = n;
      return out;
    }
    const double radius = cfg.R * d;
    Vector best = x;
    double best_d = d;
    auto consider = [&](const Vector& y) {
      if ((y - x).norm() > radius) return;
      const double dy = displacement(a, y);
      if (dy < best_d) {
        best_d = dy;
        best = y;
      }
    };

    // Directions towards and away from each sigma(s^{+-1}) x, and towards the orbit mean.
    std::vector<Vector> dirs;
    Vector mean = Vector::Zero(a.dim());
    int count = 0;
    for (int g = 0; g < static_cast<int>(a.generators().size()); ++g) {
      for (int sign : {1, -1}) {
        const Vector y = a.letter_map({g, sign}).apply(x);
        mean += y;
        ++count;
        dirs.push_back(y - x);
        dirs.push_back(x - y);
      }
    }
    if (count > 0) dirs.push_back(mean / count - x);
    for (const auto& u : dirs) {
      const double nu = u.norm();
      if (nu == 0.0) continue;
      double t = 1.0;
      double len = radius / 2.0;
      for (int j = 0; j < 24; ++j, t /= 2.0, len /= 2.0) {
        consider(x + t * u);
        consider(x + (len / nu) * u);
      }
    }

    if (best_d > cfg.alpha * d) {
      double sampled_min = std::numeric_limits<double>::infinity();
      for (int i = 0; i < cfg.ball_samples; ++i) {
        const Vector y = sample_ball(x, radius, rng);
        const double dy = displacement(a, y);
        sampled_min = std::min(sampled_min, dy);
        if (dy < best_d) {
          best_d = dy;
          best = y;
        }
      }
      if (best_d > cfg.alpha * d) {
        out.status = DescentResult::Status::witness;
        out.point = x;
        out.displacement = d;
        out.iterations = n;
        out.witness_min = sampled_min;
        out.witness_samples = cfg.ball_samples;
        return out;
      }
    }
    last_step = (best - x).norm();
    x = best;
    d = best_d;
  }
  throw ConvergenceError("fixed_point_search: iteration cap reached without convergence or witness",
                         std::vector<double>(x.data(), x.data() + x.size()));
}

DescentResult fixed_point_search(const AffineAction& a, const DescentConfig& cfg) {
  return fixed_point_search(a, Vector::Zero(a.dim()), cfg);
}

std::optional<Vector> coboundary_solve(const AffineAction& a) {
  const int dim = a.dim();
  const auto k = static_cast<int>(a.generators().size());
  if (k == 0) return Vector::Zero(dim);
  Matrix A(k * dim, dim);
  Vector rhs(k * dim);
  for (int i = 0; i < k; ++i) {
    const auto& g = a.generators()[i];
    A.block(i * dim, 0, dim, dim) = Matrix::Identity(dim, dim) - g.linear;
    rhs.segment(i * dim, dim) = g.translation;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
  Vector v = cod.solve(rhs);
  if ((A * v - rhs).norm() > 1e-7) return std::nullopt;
  return v;
}

GaussianEmbedding gaussian_embedding(const std::vector<Vector>& points, double t) {
  if (!(t > 0.0)) throw InputError("gaussian_embedding: t must be positive");
  const auto n = static_cast<int>(points.size());
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw InputError("gaussian_embedding: points of mixed dimension");
  }
  GaussianEmbedding out;
  out.gram.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.gram(i, i) = 1.0;
    for (int j = 0; j < i; ++j) {
      const double g = std::exp(-t * (points[i] - points[j]).squaredNorm());
      out.gram(i, j) = g;
      out.gram(j, i) = g;
    }
  }
  if (n == 0) {
    out.factor.resize(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.gram);
  if (es.info() != Eigen::Success) throw NumericalError("gaussian_embedding: eigensolver failed");
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  if (out.min_eigenvalue < -1e-9) throw NumericalError("gaussian_embedding: Gram matrix is not PSD");
  const Vector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  out.factor = roots.asDiagonal() * es.eigenvectors().transpose();
  out.residual = (out.factor.transpose() * out.factor - out.gram).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace coarsefp
