#include "evolution.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "calculus.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "operators.hpp"

namespace graphcalc::evolution {

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::HeatImplicit: return "heat_implicit";
    case Scheme::SchrodingerCn: return "schrodinger_cn";
    case Scheme::GpStrang: return "gp_strang";
  }
  return "unknown";
}

std::string to_csv(const EvolutionTrace& trace) {
  std::string out = "step,t,mass,dirichlet_energy,free_energy,max_abs\n";
  for (const auto& row : trace.rows) {
    out += std::to_string(row.step);
    for (double value : {row.time, row.mass, row.dirichlet_energy, row.free_energy, row.max_abs}) {
      out += ',';
      out += format_g17(value);
    }
    out += '\n';
  }
  return out;
}

namespace {

using ComplexSparse = Eigen::SparseMatrix<Complex>;
using ComplexVector = Eigen::VectorXcd;

void validate(const EvolutionConfig& cfg, Scheme expected) {
  if (cfg.scheme != expected)
    throw Error(ErrorCode::BadParams, std::string("configuration scheme must be ") + to_string(expected));
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw Error(ErrorCode::BadParams, "dt must be positive");
  if (cfg.steps < 1) throw Error(ErrorCode::BadParams, "steps must be >= 1");
  if (!(cfg.solve_tol > 0.0)) throw Error(ErrorCode::BadParams, "solve tolerance must be positive");
  if (cfg.stride < 1) throw Error(ErrorCode::BadParams, "trace stride must be >= 1");
}

template <class T>
TraceRow trace_row(const WeightedGraph& g, std::span<const T> u, std::size_t step, double dt) {
  double max_abs = 0.0;
  for (const auto& value : u) max_abs = std::max(max_abs, std::abs(value));
  return {step,
          static_cast<double>(step) * dt,
          calculus::mass(g, u),
          calculus::dirichlet_energy(g, u),
          calculus::free_energy(g, u),
          max_abs};
}

template <class T>
void record(EvolutionTrace& trace, const WeightedGraph& g, const std::vector<T>& u, std::size_t step,
            const EvolutionConfig& cfg) {
  if (step % cfg.stride == 0) trace.rows.push_back(trace_row<T>(g, u, step, cfg.dt));
}

/// (W - D)u = d_x Δu(x), summed as Σ μ (u(y) - u(x)) so that constants map
/// to exact zeros.
template <class Vec>
Vec weighted_differences(const WeightedGraph& g, const Vec& u) {
  Vec out(u.size());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    typename Vec::Scalar acc(0);
    for (const auto& [y, mu] : g.neighbors(x)) acc += mu * (u(y) - u(x));
    out(x) = acc;
  }
  return out;
}

}  // namespace

struct CayleyStep::Impl {
  const WeightedGraph* graph = nullptr;
  ComplexSparse lhs;
  double dt = 0.0;
  double tol = 1e-12;
  bool direct = true;
  Eigen::SparseLU<ComplexSparse> lu;
  Eigen::BiCGSTAB<ComplexSparse, Eigen::IncompleteLUT<Complex>> krylov;
};

CayleyStep::CayleyStep(const WeightedGraph& g, double dt, double solve_tol) : impl_(std::make_unique<Impl>()) {
  if (dt == 0.0 || !std::isfinite(dt)) throw Error(ErrorCode::BadParams, "dt must be nonzero and finite");
  // Rows scaled by d_x: D ∓ i (dt/2) (W - D).
  const SparseMatrix w = weight_matrix(g);
  SparseMatrix d(w.rows(), w.cols());
  d.reserve(Eigen::VectorXi::Constant(w.cols(), 1));
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) d.insert(x, x) = g.degree(x);
  const SparseMatrix generator = w - d;
  const Complex half(0.0, 0.5 * dt);
  impl_->lhs = d.cast<Complex>() - half * generator.cast<Complex>();
  impl_->graph = &g;
  impl_->dt = dt;
  impl_->lhs.makeCompressed();
  impl_->tol = solve_tol;
  impl_->direct = g.vertex_count() <= kDirectSolveLimit;
  if (impl_->direct) {
    impl_->lu.compute(impl_->lhs);
    if (impl_->lu.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailure, "Cayley factorization failed");
  } else {
    impl_->krylov.setTolerance(solve_tol);
    impl_->krylov.compute(impl_->lhs);
    if (impl_->krylov.info() != Eigen::Success)
      throw Error(ErrorCode::LinearSolveFailure, "Cayley preconditioner setup failed");
  }
}

CayleyStep::~CayleyStep() = default;
CayleyStep::CayleyStep(CayleyStep&&) noexcept = default;
CayleyStep& CayleyStep::operator=(CayleyStep&&) noexcept = default;

void CayleyStep::apply(std::vector<Complex>& u) const {
  // Increment form: lhs (u' - u) = i dt (W - D) u.
  Eigen::Map<ComplexVector> state(u.data(), static_cast<Eigen::Index>(u.size()));
  const ComplexVector b = Complex(0.0, impl_->dt) * weighted_differences(*impl_->graph, ComplexVector(state));
  ComplexVector delta;
  if (impl_->direct) {
    delta = impl_->lu.solve(b);
    delta += impl_->lu.solve(b - impl_->lhs * delta);
    if (impl_->lu.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailure, "Cayley solve failed");
  } else {
    delta = impl_->krylov.solve(b);
    if (impl_->krylov.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailure, "BiCGSTAB did not converge");
  }
  if (!delta.allFinite()) throw Error(ErrorCode::LinearSolveFailure, "Cayley step produced non-finite values");
  state += delta;
}

HeatResult evolve_heat(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg) {
  validate(cfg, Scheme::HeatImplicit);
  require_domain(g, u0);
  const auto initial = u0.real();
  std::vector<double> u(initial.begin(), initial.end());
  const auto n = static_cast<Eigen::Index>(u.size());

  // Rows scaled by d_x: (1 + dt) D - dt W, symmetric positive definite.
  SparseMatrix system = -cfg.dt * weight_matrix(g);
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    system.coeffRef(x, x) += (1.0 + cfg.dt) * g.degree(x);
  }
  system.makeCompressed();

  const bool direct = g.vertex_count() <= kDirectSolveLimit;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  if (direct) {
    ldlt.compute(system);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailure, "heat factorization failed");
  } else {
    cg.setTolerance(cfg.solve_tol);
    cg.compute(system);
  }

  HeatResult result;
  auto note = [&](std::size_t step) {
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    result.diag.max.push_back(*hi);
    result.diag.min.push_back(*lo);
    record(result.trace, g, u, step, cfg);
  };
  note(0);
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    // Increment form: system (u' - u) = dt (W - D) u.
    Eigen::Map<Eigen::VectorXd> state(u.data(), n);
    const Eigen::VectorXd b = cfg.dt * weighted_differences(g, Eigen::VectorXd(state));
    Eigen::VectorXd delta;
    if (direct) {
      delta = ldlt.solve(b);
      delta += ldlt.solve(b - system * delta);
    } else {
      delta = cg.solve(b);
      if (cg.info() != Eigen::Success) throw Error(ErrorCode::LinearSolveFailure, "CG did not converge");
    }
    if (!delta.allFinite()) throw Error(ErrorCode::LinearSolveFailure, "heat step produced non-finite values");
    state += delta;
    note(step);
  }
  result.state = VertexFunction(std::move(u));
  return result;
}

EvolutionResult schrodinger_evolve(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg) {
  validate(cfg, Scheme::SchrodingerCn);
  require_domain(g, u0);
  std::vector<Complex> u = u0.as_complex();
  const CayleyStep cayley(g, cfg.dt, cfg.solve_tol);
  EvolutionResult result;
  record(result.trace, g, u, 0, cfg);
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    cayley.apply(u);
    record(result.trace, g, u, step, cfg);
  }
  result.state = VertexFunction(std::move(u));
  return result;
}

EvolutionResult gp_evolve(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg) {
  validate(cfg, Scheme::GpStrang);
  require_domain(g, u0);
  std::vector<Complex> u = u0.as_complex();
  const CayleyStep cayley(g, cfg.dt, cfg.solve_tol);

  // Exact flow of i u_t = u(|u|² - 1) over dt/2; |u| is invariant under it.
  auto half_phase = [&]() {
    for (auto& z : u) z *= std::polar(1.0, -0.5 * cfg.dt * (std::norm(z) - 1.0));
  };

  EvolutionResult result;
  record(result.trace, g, u, 0, cfg);
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    half_phase();
    cayley.apply(u);
    half_phase();
    record(result.trace, g, u, step, cfg);
  }
  result.state = VertexFunction(std::move(u));
  return result;
}

CertificateReport check_parabolic_max(const MaxPrincipleDiag& diag, double tol) {
  std::vector<SlackEntry> slack;
  const std::size_t count = std::min(diag.max.size(), diag.min.size());
  for (std::size_t n = 1; n < count; ++n) {
    slack.push_back({"max@" + std::to_string(n), diag.max[n - 1] - diag.max[n]});
    slack.push_back({"min@" + std::to_string(n), diag.min[n] - diag.min[n - 1]});
  }
  if (count > 0) {
    const double sup = *std::max_element(diag.max.begin(), diag.max.begin() + static_cast<std::ptrdiff_t>(count));
    for (std::size_t n = 1; n < count; ++n) {
      const double range = diag.max[n] - diag.min[n];
      if (diag.max[n] >= sup && range > tol) slack.push_back({"interior_sup@" + std::to_string(n), -range});
    }
  }
  return CertificateReport::make("parabolic_max", tol, std::move(slack));
}

}  // namespace graphcalc::evolution
