#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseCholesky>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"

namespace graphcalc::elliptic {

Potential::Potential(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      throw Error(ErrorCode::InvalidPotential, "Q must be finite and >= 0 (index " + std::to_string(i) + ")");
}

bool Potential::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double q) { return q == 0.0; });
}

nlohmann::json to_json(const SolveReport& report) {
  return {{"converged", report.converged},
          {"iterations", report.iterations},
          {"residual", report.residual},
          {"damping_events", report.damping_events}};
}

namespace {

double schrodinger_residual(const WeightedGraph& g, std::span<const double> q, std::span<const double> f,
                            std::span<const double> u, const std::vector<bool>& fixed) {
  double worst = 0.0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (fixed[x]) continue;
    double r = -calculus::laplacian_at(g, u, x) + q[x] * u[x] - f[x];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

std::pair<VertexFunction, SolveReport> solve_linear_schrodinger(const WeightedGraph& g, const Potential& q,
                                                                const VertexFunction& f,
                                                                std::span<const DirichletValue> dirichlet,
                                                                double tol) {
  require_domain(g, f);
  const std::size_t n = g.vertex_count();
  if (q.size() != n) throw Error(ErrorCode::DomainMismatch, "potential size does not match the graph");
  const auto rhs = f.real();
  const auto qv = q.values();

  std::vector<bool> fixed(n, false);
  std::vector<double> u(n, 0.0);
  for (const auto& dv : dirichlet) {
    if (dv.vertex >= n) throw Error(ErrorCode::DomainMismatch, "Dirichlet vertex out of range");
    if (!std::isfinite(dv.value)) throw Error(ErrorCode::NonFinite, "Dirichlet value is not finite");
    fixed[dv.vertex] = true;
    u[dv.vertex] = dv.value;
  }

  // Pure Neumann problem: pin one vertex, then shift to zero d-weighted mean.
  const bool neumann = dirichlet.empty() && q.is_zero();
  if (neumann) {
    double total = 0.0, scale = 0.0;
    for (VertexIndex x = 0; x < n; ++x) {
      total += g.degree(x) * rhs[x];
      scale += g.degree(x) * std::abs(rhs[x]);
    }
    if (std::abs(total) > 1e-12 * std::max(1.0, scale))
      throw Error(ErrorCode::IncompatibleRhs, "Q = 0 without Dirichlet data requires sum d_x f(x) = 0");
    fixed[0] = true;
  }

  std::vector<Eigen::Index> slot(n, -1);
  Eigen::Index unknowns = 0;
  for (VertexIndex x = 0; x < n; ++x)
    if (!fixed[x]) slot[x] = unknowns++;

  if (unknowns > 0) {
    // Row x scaled by d_x: (d_x (1 + Q_x)) u_x - Σ_{y free} μ_xy u_y = d_x f_x + Σ_{y fixed} μ_xy u_y
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd b(unknowns);
    for (VertexIndex x = 0; x < n; ++x) {
      if (fixed[x]) continue;
      const auto row = slot[x];
      triplets.emplace_back(row, row, g.degree(x) * (1.0 + qv[x]));
      double bx = g.degree(x) * rhs[x];
      for (const auto& nb : g.neighbors(x)) {
        if (fixed[nb.vertex])
          bx += nb.weight * u[nb.vertex];
        else
          triplets.emplace_back(row, slot[nb.vertex], -nb.weight);
      }
      b(row) = bx;
    }
    Eigen::SparseMatrix<double> a(unknowns, unknowns);
    a.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "factorization failed");
    Eigen::VectorXd sol = solver.solve(b);
    // A couple of refinement sweeps tighten the residual for ill-conditioned weights.
    for (int sweep = 0; sweep < 2; ++sweep) sol += solver.solve(b - a * sol);
    if (solver.info() != Eigen::Success || !sol.allFinite())
      throw Error(ErrorCode::SingularSystem, "solve produced non-finite values");
    for (VertexIndex x = 0; x < n; ++x)
      if (!fixed[x]) u[x] = sol(slot[x]);
  }

  if (neumann) {
    double mean = 0.0;
    for (VertexIndex x = 0; x < n; ++x) mean += g.degree(x) * u[x];
    mean /= g.volume();
    for (auto& value : u) value -= mean;
    fixed[0] = false;
  }

  SolveReport report;
  report.iterations = 1;
  report.residual = schrodinger_residual(g, qv, rhs, u, fixed);
  report.converged = report.residual <= tol;
  return {VertexFunction(std::move(u)), report};
}

}  // namespace graphcalc::elliptic
