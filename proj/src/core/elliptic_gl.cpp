#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "operators.hpp"

namespace graphcalc::elliptic {

GinzburgLandauConfig gl_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "solver configuration must be a JSON object");
  GinzburgLandauConfig cfg;
  try {
    cfg.tol = j.value("tol", cfg.tol);
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.fixed_point_step = j.value("fixed_point_step", cfg.fixed_point_step);
    const std::string damping = j.value("damping", std::string("line_search"));
    if (damping == "line_search")
      cfg.damping = Damping::LineSearch;
    else if (damping == "none")
      cfg.damping = Damping::None;
    else
      throw Error(ErrorCode::Parse, "damping must be \"line_search\" or \"none\"");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!(cfg.tol > 0.0) || cfg.max_iters == 0 || !(cfg.fixed_point_step > 0.0))
    throw Error(ErrorCode::BadParams, "need tol > 0, max_iters >= 1, fixed_point_step > 0");
  return cfg;
}

nlohmann::json to_json(const GinzburgLandauConfig& cfg) {
  return {{"tol", cfg.tol},
          {"max_iters", cfg.max_iters},
          {"damping", cfg.damping == Damping::LineSearch ? "line_search" : "none"},
          {"seed", cfg.seed},
          {"fixed_point_step", cfg.fixed_point_step}};
}

std::vector<Complex> gl_residual(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  const auto values = u.as_complex();
  std::vector<Complex> r(values.size());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x)
    r[x] = calculus::laplacian_at<Complex>(g, values, x) + values[x] * (1.0 - std::norm(values[x]));
  return r;
}

double gl_residual_norm(const WeightedGraph& g, const VertexFunction& u) {
  double worst = 0.0;
  for (const auto& r : gl_residual(g, u)) worst = std::max(worst, std::abs(r));
  return worst;
}

namespace {

// Unknowns are stacked as [Re u; Im u] for complex states and [u] for real ones.
class GinzburgLandauSystem {
 public:
  GinzburgLandauSystem(const WeightedGraph& g, bool complex)
      : n_(static_cast<Eigen::Index>(g.vertex_count())), complex_(complex) {
    lap_ = Eigen::MatrixXd(laplacian_matrix(g));
  }

  Eigen::Index size() const { return complex_ ? 2 * n_ : n_; }

  Eigen::VectorXd residual(const Eigen::VectorXd& z) const {
    Eigen::VectorXd r(size());
    if (!complex_) {
      r = lap_ * z;
      r.array() += z.array() * (1.0 - z.array().square());
      return r;
    }
    const auto a = z.head(n_);
    const auto b = z.tail(n_);
    const Eigen::ArrayXd factor = 1.0 - a.array().square() - b.array().square();
    r.head(n_) = lap_ * a;
    r.tail(n_) = lap_ * b;
    r.head(n_).array() += a.array() * factor;
    r.tail(n_).array() += b.array() * factor;
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const {
    if (!complex_) {
      Eigen::MatrixXd j = lap_;
      j.diagonal().array() += 1.0 - 3.0 * z.array().square();
      return j;
    }
    const Eigen::ArrayXd a = z.head(n_).array();
    const Eigen::ArrayXd b = z.tail(n_).array();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    j.topLeftCorner(n_, n_) = lap_;
    j.bottomRightCorner(n_, n_) = lap_;
    j.topLeftCorner(n_, n_).diagonal().array() += 1.0 - 3.0 * a.square() - b.square();
    j.bottomRightCorner(n_, n_).diagonal().array() += 1.0 - a.square() - 3.0 * b.square();
    const Eigen::VectorXd cross = (-2.0 * a * b).matrix();
    j.topRightCorner(n_, n_).diagonal() = cross;
    j.bottomLeftCorner(n_, n_).diagonal() = cross;
    return j;
  }

  Eigen::VectorXd pack(const VertexFunction& u) const {
    Eigen::VectorXd z(size());
    if (!complex_) {
      const auto values = u.real();
      for (Eigen::Index i = 0; i < n_; ++i) z(i) = values[i];
    } else {
      const auto values = u.as_complex();
      for (Eigen::Index i = 0; i < n_; ++i) {
        z(i) = values[i].real();
        z(n_ + i) = values[i].imag();
      }
    }
    return z;
  }

  VertexFunction unpack(const Eigen::VectorXd& z) const {
    if (!complex_) return VertexFunction(std::vector<double>(z.data(), z.data() + n_));
    std::vector<Complex> values(n_);
    for (Eigen::Index i = 0; i < n_; ++i) values[i] = Complex(z(i), z(n_ + i));
    return VertexFunction(std::move(values));
  }

  // ‖r‖∞ measured per vertex as the modulus of the complex residual.
  double norm(const Eigen::VectorXd& r) const {
    if (!r.allFinite()) return std::numeric_limits<double>::infinity();
    if (!complex_) return r.lpNorm<Eigen::Infinity>();
    return (r.head(n_).array().square() + r.tail(n_).array().square()).sqrt().maxCoeff();
  }

 private:
  Eigen::Index n_;
  bool complex_;
  Eigen::MatrixXd lap_;
};

constexpr int kMaxBacktracks = 30;
constexpr std::size_t kStallWindow = 50;

}  // namespace

std::pair<VertexFunction, SolveReport> solve_ginzburg_landau(const WeightedGraph& g, const VertexFunction& init,
                                                             const GinzburgLandauConfig& cfg) {
  require_domain(g, init);
  const GinzburgLandauSystem system(g, init.is_complex());
  Eigen::VectorXd z = system.pack(init);
  Eigen::VectorXd r = system.residual(z);
  double norm = system.norm(r);

  SolveReport report;
  double best = norm;
  std::size_t since_improvement = 0;
  bool last_singular = false;
  bool stalled = false;

  while (norm > cfg.tol && report.iterations < cfg.max_iters) {
    ++report.iterations;
    bool stepped = false;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(system.jacobian(z));
    const bool singular = !lu.isInvertible();

    if (!singular) {
      const Eigen::VectorXd dz = lu.solve(-r);
      if (dz.allFinite()) {
        if (cfg.damping == Damping::None) {
          Eigen::VectorXd trial = z + dz;
          Eigen::VectorXd trial_r = system.residual(trial);
          if (std::isfinite(system.norm(trial_r))) {
            z = std::move(trial);
            r = std::move(trial_r);
            stepped = true;
          }
        } else {
          double alpha = 1.0;
          for (int k = 0; k < kMaxBacktracks && !stepped; ++k, alpha *= 0.5) {
            Eigen::VectorXd trial = z + alpha * dz;
            Eigen::VectorXd trial_r = system.residual(trial);
            if (system.norm(trial_r) <= (1.0 - 1e-4 * alpha) * norm) {
              z = std::move(trial);
              r = std::move(trial_r);
              stepped = true;
              if (k > 0) ++report.damping_events;
            }
          }
        }
      }
    }
    if (!stepped) {
      z += cfg.fixed_point_step * r;
      r = system.residual(z);
      ++report.damping_events;
    }
    last_singular = singular;
    norm = system.norm(r);
    if (!std::isfinite(norm)) {
      stalled = true;
      break;
    }

    if (norm < best * (1.0 - 1e-3)) {
      best = norm;
      since_improvement = 0;
    } else if (++since_improvement >= kStallWindow) {
      stalled = true;
      break;
    }
  }

  if (stalled && last_singular && norm > cfg.tol)
    throw Error(ErrorCode::SingularJacobian, "fixed-point fallback stalled at residual " + std::to_string(norm));

  report.residual = norm;
  report.converged = norm <= cfg.tol;
  if (!z.allFinite()) return {init, report};
  return {system.unpack(z), report};
}

CertificateReport verify_gl_bound(const WeightedGraph& g, const VertexFunction& u, double tol) {
  const double residual = gl_residual_norm(g, u);
  if (!(residual <= tol))
    throw Error(ErrorCode::NotASolution, "GL residual " + std::to_string(residual) + " exceeds tol");
  std::vector<SlackEntry> slack;
  slack.reserve(g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) slack.push_back({g.name(x), 1.0 - u.abs(x) + tol});
  auto report = CertificateReport::make("gl_bound", tol, std::move(slack));
  report.pass = report.min_slack >= 0.0;
  return report;
}

}  // namespace graphcalc::elliptic
