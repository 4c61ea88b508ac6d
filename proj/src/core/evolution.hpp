#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "graph.hpp"
#include "vertex_function.hpp"

namespace graphcalc::evolution {

enum class Scheme { HeatImplicit, SchrodingerCn, GpStrang };

const char* to_string(Scheme scheme) noexcept;

/// Systems up to this many vertices are factorized directly; larger ones
/// use Krylov solvers at `solve_tol`.
inline constexpr std::size_t kDirectSolveLimit = 2048;

struct EvolutionConfig {
  double dt = 0.01;
  std::size_t steps = 1;
  Scheme scheme = Scheme::HeatImplicit;
  double solve_tol = 1e-12;
  std::size_t stride = 1;
};

struct TraceRow {
  std::size_t step;
  double time;
  double mass;
  double dirichlet_energy;
  double free_energy;
  double max_abs;
};

/// Rows at step 0 and every `stride` steps after it.
struct EvolutionTrace {
  std::vector<TraceRow> rows;
};

/// Header `step,t,mass,dirichlet_energy,free_energy,max_abs`; values with 17
/// significant digits.
std::string to_csv(const EvolutionTrace& trace);

/// Spatial max and min of a heat run at every step, including step 0.
struct MaxPrincipleDiag {
  std::vector<double> max;
  std::vector<double> min;
};

struct HeatResult {
  VertexFunction state;
  EvolutionTrace trace;
  MaxPrincipleDiag diag;
};

struct EvolutionResult {
  VertexFunction state;
  EvolutionTrace trace;
};

/// Implicit Euler for u_t = Δu. Throws LinearSolveFailure, BadParams.
HeatResult evolve_heat(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg);

/// Crank-Nicolson (Cayley) steps for i u_t + Δu = 0. Real u0 is promoted.
EvolutionResult schrodinger_evolve(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg);

/// Strang splitting for i u_t + Δu = u(|u|² - 1): exact nonlinear phase
/// half-steps around one Crank-Nicolson step.
EvolutionResult gp_evolve(const WeightedGraph& g, const VertexFunction& u0, const EvolutionConfig& cfg);

/// Slack `max@n` = max_{n-1} - max_n and `min@n` = min_n - min_{n-1}; a
/// non-constant state at step n >= 1 that reaches the run's supremum adds a
/// failing `interior_sup@n` entry.
CertificateReport check_parabolic_max(const MaxPrincipleDiag& diag, double tol = 1e-12);

/// One Cayley step (I - i dt Δ/2)⁻¹ (I + i dt Δ/2). Any nonzero dt, so a step
/// with -dt undoes one with dt. Keeps a reference to g.
class CayleyStep {
 public:
  CayleyStep(const WeightedGraph& g, double dt, double solve_tol = 1e-12);
  ~CayleyStep();
  CayleyStep(CayleyStep&&) noexcept;
  CayleyStep& operator=(CayleyStep&&) noexcept;

  void apply(std::vector<Complex>& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace graphcalc::evolution
