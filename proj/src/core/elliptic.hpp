#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "certificate.hpp"
#include "graph.hpp"
#include "vertex_function.hpp"

namespace graphcalc::elliptic {

/// Nonnegative real potential Q. Construction throws InvalidPotential for
/// negative or non-finite entries.
class Potential {
 public:
  explicit Potential(std::vector<double> values);
  static Potential constant(std::size_t n, double q) { return Potential(std::vector<double>(n, q)); }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_zero() const noexcept;

 private:
  std::vector<double> values_;
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;
  /// ∞-norm of the equation residual at the returned state.
  double residual = 0.0;
  std::size_t damping_events = 0;
};

nlohmann::json to_json(const SolveReport& report);

struct DirichletValue {
  VertexIndex vertex;
  double value;
};

/// Solves -Δu + Qu = f on non-Dirichlet vertices with u clamped on the
/// Dirichlet ones. With Q ≡ 0 and no Dirichlet data the solution is only
/// defined up to constants; the one with Σ d_x u(x) = 0 is returned.
///
/// Throws IncompatibleRHS (pure Neumann case with Σ d_x f(x) != 0),
/// SingularSystem, DomainMismatch.
std::pair<VertexFunction, SolveReport> solve_linear_schrodinger(const WeightedGraph& g, const Potential& q,
                                                                const VertexFunction& f,
                                                                std::span<const DirichletValue> dirichlet,
                                                                double tol = kDefaultTolerance);

enum class Damping { LineSearch, None };

struct GinzburgLandauConfig {
  double tol = kDefaultTolerance;
  std::size_t max_iters = 500;
  Damping damping = Damping::LineSearch;
  /// Only consumed by callers that draw a random initial state.
  std::uint64_t seed = 0;
  /// Step of the fallback iteration u <- u + step * r.
  double fixed_point_step = 0.2;
};

GinzburgLandauConfig gl_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GinzburgLandauConfig& cfg);

/// r(x) = Δu(x) + u(x)(1 - |u(x)|²)
std::vector<Complex> gl_residual(const WeightedGraph& g, const VertexFunction& u);
double gl_residual_norm(const WeightedGraph& g, const VertexFunction& u);

/// Damped Newton on Δu + u(1 - |u|²) = 0 with backtracking on ‖r‖∞. Singular
/// Jacobians and failed line searches fall back to the fixed-point step.
/// Returns converged = false when the iteration budget runs out or the
/// residual stalls; throws SingularJacobian when the stall happens while the
/// Jacobian is singular. The scalar kind of `init` is preserved.
std::pair<VertexFunction, SolveReport> solve_ginzburg_landau(const WeightedGraph& g, const VertexFunction& init,
                                                             const GinzburgLandauConfig& cfg = {});

/// slack = 1 - |u(x)| + tol. Throws NotASolution if ‖r‖∞ > tol.
CertificateReport verify_gl_bound(const WeightedGraph& g, const VertexFunction& u, double tol = kDefaultTolerance);

/// slack = Δu₊ - Q u₊ on every vertex not listed in `exempt`.
CertificateReport check_subsolution(const WeightedGraph& g, const VertexFunction& u, const Potential& q,
                                    double tol = kDefaultTolerance, std::span<const VertexIndex> exempt = {});

/// Local gradient estimate on S = {u > 0, Δu >= 0} with Q = Δu / u:
/// slack = (d(1+Q)² - 2Q - 1)u² - |∇u|². The second bound d Q² u² - |∇u|²
/// goes to `info` and does not affect `pass`. Throws NegativeInput.
CertificateReport verify_gradient_estimate(const WeightedGraph& g, const VertexFunction& u,
                                           double tol = kDefaultTolerance);

/// Per-vertex slacks `<v>/lower` = u, `<v>/upper` = A - u and
/// `<v>/growth` = Δu - u^p. Throws BadParams unless p > 0 and A > 0.
CertificateReport check_liouville_premises(const WeightedGraph& g, const VertexFunction& u, double p, double bound,
                                           double tol = kDefaultTolerance);

enum class ChainOutcome { EscapedBound, RevisitContradiction, PremiseViolation, StepBudgetExhausted };

const char* to_string(ChainOutcome outcome) noexcept;

struct ChainCertificate {
  double rho = 0.0;
  double p = 0.0;
  std::vector<VertexIndex> chain;
  /// w(x_n) = u(x_n) / rho
  std::vector<double> values;
  /// rho^(p-1) w(x_n)^p for every vertex that was extended from.
  std::vector<double> increments;
  ChainOutcome outcome = ChainOutcome::StepBudgetExhausted;
  /// Vertex that ended the chain: the premise violator, the revisited vertex
  /// or the vertex above the bound.
  std::optional<VertexIndex> witness;
};

nlohmann::json to_json(const WeightedGraph& g, const ChainCertificate& chain);

/// Greedy growth chain from x0: at each vertex the premise Δu >= u^p is
/// checked, then the chain moves to the neighbor with the largest value.
/// Throws BadStart if u(x0) <= 0 and NegativeInput if u has negative values.
ChainCertificate keller_osserman_chain(const WeightedGraph& g, const VertexFunction& u, double p, double bound,
                                       VertexIndex x0, std::size_t max_steps, double tol = kDefaultTolerance);

struct LiouvilleSearchConfig {
  double p = 1.0;
  double bound = 1.0;
  std::size_t restarts = 10000;
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  /// Premises are accepted when Δu - u^p >= -premise_tol.
  double premise_tol = 0.0;
  /// A feasible point with ‖u‖∞ above this is a counterexample.
  double nonzero_threshold = 1e-6;
};

struct LiouvilleSearchResult {
  std::size_t restarts_run = 0;
  std::size_t steps_run = 0;
  std::size_t feasible_points = 0;
  /// Largest ‖u‖∞ over all feasible points visited.
  double largest_feasible = 0.0;
  std::optional<VertexFunction> counterexample;
};

/// Attempted counterexample search for the Liouville statement: random
/// starts in [0, A]^n at log-uniform scales followed by projected ascent on
/// Σu against a quadratic penalty for Δu < u^p.
LiouvilleSearchResult liouville_search(const WeightedGraph& g, const LiouvilleSearchConfig& cfg);

/// Exhaustive check over u in {0, h, 2h, ..., A}^n. Returns every feasible
/// grid point (premises with tolerance `tol`). Only sensible for tiny graphs.
std::vector<std::vector<double>> liouville_grid_feasible(const WeightedGraph& g, double p, double bound,
                                                         double resolution, double tol = 0.0);

enum class MaxPrincipleKind { NotSubharmonic, ConstantConfirmed, Violation };

struct MaxPrincipleOutcome {
  MaxPrincipleKind kind;
  std::optional<VertexIndex> witness;
  /// max u - min u
  double range = 0.0;
};

const char* to_string(MaxPrincipleKind kind) noexcept;
nlohmann::json to_json(const WeightedGraph& g, const MaxPrincipleOutcome& outcome);

/// If Δu < -tol somewhere, reports the most negative vertex. Otherwise walks
/// out from the maximum: Δu(x) >= -tol bounds how far each neighbor y can sit
/// below the maximum, by (d_x / μ_xy)(tol + deficit(x)). Every vertex within
/// its bound confirms constancy; a vertex outside it is a violation.
MaxPrincipleOutcome check_strong_max_principle(const WeightedGraph& g, const VertexFunction& u,
                                               double tol = kDefaultTolerance);

struct SpectralPair {
  double eigenvalue;
  /// d-orthonormal real eigenvector of -Δ.
  VertexFunction eigenvector;
};

enum class SpectrumMethod { Auto, Dense, Iterative };

inline constexpr std::size_t kDenseSpectrumLimit = 512;

/// k smallest eigenpairs of -Δ via the symmetric normalization
/// I - D^{-1/2} W D^{-1/2}. Auto picks the dense solver up to
/// kDenseSpectrumLimit vertices and block Krylov iteration above.
/// Throws ConvergenceFailure when a residual ‖-Δφ - λφ‖∞ exceeds tol.
std::vector<SpectralPair> spectrum_smallest(const WeightedGraph& g, std::size_t k, double tol = 1e-8,
                                            SpectrumMethod method = SpectrumMethod::Auto);

nlohmann::json to_json(const WeightedGraph& g, const std::vector<SpectralPair>& pairs);

}  // namespace graphcalc::elliptic
