// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Property checks run the library against independent
// reference computations from tests/support/oracles.hpp.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "fixtures.hpp"
#include "graph.hpp"
#include "oracles.hpp"
#include "random.hpp"
#include "vertex_function.hpp"

namespace {

using namespace graphcalc;
using namespace graphcalc::elliptic;
using namespace graphcalc::evolution;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

// ------------------------------------------------------------------ corpus

constexpr GraphFamily kFamilies[] = {GraphFamily::Path, GraphFamily::Cycle,  GraphFamily::Complete,
                                     GraphFamily::Star, GraphFamily::Grid2d, GraphFamily::Gnp};

/// Trial i draws family i mod 6 with size and weights varying by trial.
WeightedGraph corpus_graph(std::size_t i) {
  const auto family = kFamilies[i % 6];
  auto rng = Rng::stream(0xacce, i);
  GenerateParams p;
  p.seed = i;
  p.n = 3 + static_cast<std::size_t>(rng.uniform01() * 10.0);
  if (family == GraphFamily::Grid2d) {
    p.rows = 2 + static_cast<std::size_t>(rng.uniform01() * 3.0);
    p.cols = 2 + static_cast<std::size_t>(rng.uniform01() * 3.0);
  }
  if (family == GraphFamily::Gnp) {
    p.n = 6 + static_cast<std::size_t>(rng.uniform01() * 10.0);
    p.p = 0.45;
  }
  if ((i / 6) % 2 == 1) p.random_weights = WeightRange{0.1, 5.0};
  return generate(family, p);
}

VertexFunction random_real(std::size_t n, Rng& rng, double lo, double hi, double zero_probability = 0.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.bernoulli(zero_probability) ? 0.0 : rng.uniform(lo, hi);
  return VertexFunction(std::move(v));
}

VertexFunction random_complex(std::size_t n, Rng& rng, double radius, double zero_probability = 0.0) {
  std::vector<Complex> v(n);
  for (auto& z : v) {
    if (rng.bernoulli(zero_probability)) continue;
    // Rejection sampling in the disk.
    do {
      z = {rng.uniform(-radius, radius), rng.uniform(-radius, radius)};
    } while (std::abs(z) > radius);
  }
  return VertexFunction(std::move(v));
}

/// Neighbor sums over an explicit edge list, for complex values.
using CValues = std::map<std::string, Complex>;

CValues complex_values(const WeightedGraph& g, const VertexFunction& u) {
  CValues out;
  const auto z = u.as_complex();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out[g.name(v)] = z[v];
  return out;
}

oracle::Values grad_sq_complex(const std::vector<oracle::Edge>& edges, const CValues& u) {
  return oracle::neighbor_sum(edges, [&](const std::string& x, const std::string& y) {
    return std::norm(u.at(y) - u.at(x));
  });
}

oracle::Values modulus(const CValues& u) {
  oracle::Values out;
  for (const auto& [k, z] : u) out[k] = std::abs(z);
  return out;
}

double oracle_mass(const std::vector<oracle::Edge>& edges, const CValues& u) {
  const auto d = oracle::degrees(edges);
  double m = 0.0;
  for (const auto& [k, z] : u) m += d.at(k) * std::norm(z);
  return m;
}

double oracle_energy(const std::vector<oracle::Edge>& edges, const CValues& u) {
  double e = 0.0;
  for (const auto& edge : edges) e += edge.mu * std::norm(u.at(edge.x) - u.at(edge.y));
  return e;
}

// -------------------------------------------------------------- criteria

constexpr std::size_t kPairTrials = 1200;

Outcome kato1() {
  double core_min = kInf;
  double oracle_min = kInf;
  std::size_t complex_trials = 0;
  bool all_pass = true;
  for (std::size_t i = 0; i < kPairTrials; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(1, i);
    const bool use_complex = (i / 12) % 2 == 1;
    const auto u = use_complex ? random_complex(g.vertex_count(), rng, 1.0, 0.1)
                               : random_real(g.vertex_count(), rng, -1.0, 1.0, 0.1);
    complex_trials += use_complex;
    const auto report = calculus::check_kato1(g, u, 1e-12);
    all_pass = all_pass && report.pass;
    core_min = std::min(core_min, report.min_slack);

    const auto edges = fixtures::oracle_edges(g);
    const auto cu = complex_values(g, u);
    const auto full = grad_sq_complex(edges, cu);
    const auto of_abs = oracle::grad_sq(edges, modulus(cu));
    for (const auto& [v, value] : full) oracle_min = std::min(oracle_min, value - of_abs.at(v));
  }
  const bool pass = all_pass && core_min >= -1e-12 && oracle_min >= -1e-12;
  return {pass, "pairs=" + std::to_string(kPairTrials) + " complex=" + std::to_string(complex_trials) +
                    fmt(" min_slack=%.3e", core_min) + fmt(" oracle_min_slack=%.3e", oracle_min)};
}

Outcome product_rule() {
  double core_worst = 0.0;
  double oracle_worst = 0.0;
  bool all_pass = true;
  for (std::size_t i = 0; i < kPairTrials; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(2, i);
    const bool use_complex = (i / 12) % 2 == 1;
    const auto u = use_complex ? random_complex(g.vertex_count(), rng, 1.0, 0.1)
                               : random_real(g.vertex_count(), rng, -1.0, 1.0, 0.1);
    const auto report = calculus::check_product_rule(g, u, 1e-12);
    all_pass = all_pass && report.pass;
    core_worst = std::max(core_worst, -report.min_slack);

    // Δ|u|² = 2 Re(conj(u) Δu) + |∇u|² evaluated term by term.
    const auto edges = fixtures::oracle_edges(g);
    const auto cu = complex_values(g, u);
    oracle::Values sq;
    for (const auto& [k, z] : cu) sq[k] = std::norm(z);
    const auto lap_sq = oracle::laplacian(edges, sq);
    const auto grad = grad_sq_complex(edges, cu);
    const auto d = oracle::degrees(edges);
    for (const auto& [x, value] : lap_sq) {
      Complex lap(0.0, 0.0);
      for (const auto& e : edges) {
        if (e.x == x) lap += e.mu / d.at(x) * (cu.at(e.y) - cu.at(x));
        if (e.y == x) lap += e.mu / d.at(x) * (cu.at(e.x) - cu.at(x));
      }
      const double residual = value - 2.0 * std::real(std::conj(cu.at(x)) * lap) - grad.at(x);
      oracle_worst = std::max(oracle_worst, std::abs(residual));
    }
  }
  const bool pass = all_pass && core_worst <= 1e-12 && oracle_worst <= 1e-12;
  return {pass, "pairs=" + std::to_string(kPairTrials) + fmt(" max_residual=%.3e", core_worst) +
                    fmt(" oracle_max_residual=%.3e", oracle_worst)};
}

Outcome kato2() {
  double core_min = kInf;
  double oracle_min = kInf;
  std::size_t zeros = 0;
  bool all_pass = true;
  for (std::size_t i = 0; i < kPairTrials; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(3, i);
    const auto u = random_real(g.vertex_count(), rng, -1.0, 1.0, 0.1);
    for (double x : u.real()) zeros += x == 0.0;
    const auto [abs_report, pos_report] = calculus::check_kato2(g, u, 1e-12);
    all_pass = all_pass && abs_report.pass && pos_report.pass;
    core_min = std::min({core_min, abs_report.min_slack, pos_report.min_slack});

    const auto edges = fixtures::oracle_edges(g);
    const auto uv = fixtures::to_values(g, u);
    oracle::Values abs_u, pos_u;
    for (const auto& [k, x] : uv) {
      abs_u[k] = std::abs(x);
      pos_u[k] = std::max(x, 0.0);
    }
    const auto lap_u = oracle::laplacian(edges, uv);
    const auto lap_abs = oracle::laplacian(edges, abs_u);
    const auto lap_pos = oracle::laplacian(edges, pos_u);
    for (const auto& [k, x] : uv) {
      const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
      const double sign_plus = x > 0.0 ? 1.0 : 0.0;
      oracle_min = std::min({oracle_min, lap_abs.at(k) - sign * lap_u.at(k), lap_pos.at(k) - sign_plus * lap_u.at(k)});
    }
  }
  const bool pass = all_pass && zeros > 0 && core_min >= -1e-12 && oracle_min >= -1e-12;
  return {pass, "trials=" + std::to_string(kPairTrials) + " zero_vertices=" + std::to_string(zeros) +
                    fmt(" min_slack=%.3e", core_min) + fmt(" oracle_min_slack=%.3e", oracle_min)};
}

Outcome gl_bound() {
  constexpr std::size_t kInitsPerFamily = 60;
  std::size_t converged = 0;
  std::size_t attempted = 0;
  std::size_t fewest_per_family = kInitsPerFamily;
  double worst = 0.0;
  bool bound_ok = true;
  for (std::size_t f = 0; f < 6; ++f) {
    std::size_t family_converged = 0;
    for (std::size_t k = 0; k < kInitsPerFamily; ++k) {
      const auto g = corpus_graph(f + 6 * k);
      auto rng = Rng::stream(4, f * 1000 + k);
      const auto init = k % 2 == 0 ? random_real(g.vertex_count(), rng, -2.0, 2.0)
                                   : random_complex(g.vertex_count(), rng, 2.0);
      GinzburgLandauConfig cfg;
      cfg.tol = 1e-10;
      ++attempted;
      std::pair<VertexFunction, SolveReport> solved;
      try {
        solved = solve_ginzburg_landau(g, init, cfg);
      } catch (const graphcalc::Error&) {
        continue;
      }
      const auto& [u, report] = solved;
      if (!report.converged || gl_residual_norm(g, u) > 1e-10) continue;
      ++converged;
      ++family_converged;
      double max_abs = 0.0;
      for (std::size_t v = 0; v < u.size(); ++v) max_abs = std::max(max_abs, u.abs(v));
      worst = std::max(worst, max_abs);
      if (max_abs > 1.0 + 1e-9 || !verify_gl_bound(g, u, 1e-10).pass) bound_ok = false;
    }
    fewest_per_family = std::min(fewest_per_family, family_converged);
  }

  bool constants_ok = true;
  for (std::size_t f = 0; f < 6; ++f) {
    const auto g = corpus_graph(f);
    for (double c : {1.0, -1.0, 0.0}) {
      const auto init = VertexFunction::constant(g.vertex_count(), c);
      const auto [u, report] = solve_ginzburg_landau(g, init, {});
      constants_ok = constants_ok && report.converged && report.iterations == 0;
      for (double x : u.real()) constants_ok = constants_ok && x == c;
    }
  }
  const bool pass = bound_ok && constants_ok && fewest_per_family > 0;
  return {pass, "inits=" + std::to_string(attempted) + " converged=" + std::to_string(converged) +
                    " min_converged_per_family=" + std::to_string(fewest_per_family) + fmt(" max|u|=%.17g", worst) +
                    (constants_ok ? " constants=exact" : " constants=FAILED")};
}

Outcome subsolution() {
  constexpr std::size_t kCases = 150;
  double core_min = kInf;
  double oracle_min = kInf;
  double residual_max = 0.0;
  bool all_pass = true;
  for (std::size_t i = 0; i < kCases; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(5, i);
    const std::size_t n = g.vertex_count();
    // One to three Dirichlet vertices with data in [-1, 1].
    std::vector<DirichletValue> bc;
    const std::size_t count = 1 + static_cast<std::size_t>(rng.uniform01() * std::min<double>(3.0, n - 1.0));
    std::vector<bool> is_boundary(n, false);
    while (bc.size() < count) {
      const auto v = static_cast<VertexIndex>(rng.uniform01() * n);
      if (is_boundary[v]) continue;
      is_boundary[v] = true;
      bc.push_back({v, rng.uniform(-1.0, 1.0)});
    }
    std::vector<double> qv(n);
    for (auto& q : qv) q = rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, 2.0);
    const Potential q(qv);
    const auto [u, report] = solve_linear_schrodinger(g, q, VertexFunction::constant(n, 0.0), bc, 1e-12);

    std::vector<VertexIndex> exempt;
    for (const auto& b : bc) exempt.push_back(b.vertex);
    const auto cert = check_subsolution(g, u, q, 1e-10, exempt);
    all_pass = all_pass && cert.pass;
    core_min = std::min(core_min, cert.min_slack);

    const auto edges = fixtures::oracle_edges(g);
    const auto uv = fixtures::to_values(g, u);
    oracle::Values pos;
    for (const auto& [k, x] : uv) pos[k] = std::max(x, 0.0);
    const auto lap_u = oracle::laplacian(edges, uv);
    const auto lap_pos = oracle::laplacian(edges, pos);
    for (VertexIndex v = 0; v < n; ++v) {
      if (is_boundary[v]) continue;
      const auto& name = g.name(v);
      residual_max = std::max(residual_max, std::abs(-lap_u.at(name) + qv[v] * uv.at(name)));
      oracle_min = std::min(oracle_min, lap_pos.at(name) - qv[v] * pos.at(name));
    }
  }
  const bool pass = all_pass && core_min >= -1e-10 && oracle_min >= -1e-10 && residual_max <= 1e-10;
  return {pass, "cases=" + std::to_string(kCases) + fmt(" min_slack=%.3e", core_min) +
                    fmt(" oracle_min_slack=%.3e", oracle_min) + fmt(" equation_residual=%.3e", residual_max)};
}

Outcome gradient_estimate() {
  constexpr std::size_t kTrials = 600;
  double core_min = kInf;
  double oracle_min = kInf;
  std::size_t qualifying = 0;
  bool all_pass = true;
  for (std::size_t i = 0; i < kTrials; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(6, i);
    const auto u = random_real(g.vertex_count(), rng, 0.0, 1.0, 0.1);
    const auto report = verify_gradient_estimate(g, u, 1e-10);
    all_pass = all_pass && report.pass;
    core_min = std::min(core_min, report.min_slack);

    const auto edges = fixtures::oracle_edges(g);
    const auto uv = fixtures::to_values(g, u);
    const auto lap = oracle::laplacian(edges, uv);
    const auto grad = oracle::grad_sq(edges, uv);
    const double d = oracle::d_constant(edges);
    for (const auto& [k, x] : uv) {
      if (!(x > 0.0) || lap.at(k) < 0.0) continue;
      ++qualifying;
      const double q = lap.at(k) / x;
      oracle_min = std::min(oracle_min, (d * (1 + q) * (1 + q) - 2 * q - 1) * x * x - grad.at(k));
    }
  }

  const auto p3 = fixtures::from_oracle(fixtures::kP3);
  const auto hand = verify_gradient_estimate(p3, fixtures::real_function(p3, {{"a", 2.0}, {"b", 1.0}, {"c", 2.0}}));
  const double hand_slack = hand.slack_at("b").value_or(-kInf);
  const bool hand_ok = std::abs(hand_slack - 4.0) <= 1e-12;

  const bool pass = all_pass && qualifying > 0 && core_min >= -1e-10 && oracle_min >= -1e-10 && hand_ok;
  return {pass, "trials=" + std::to_string(kTrials) + " qualifying_vertices=" + std::to_string(qualifying) +
                    fmt(" min_slack=%.3e", core_min) + fmt(" oracle_min_slack=%.3e", oracle_min) +
                    fmt(" p3_slack=%.17g", hand_slack)};
}

Outcome liouville() {
  // Search graphs of at most 30 vertices.
  std::vector<WeightedGraph> graphs;
  {
    GenerateParams p;
    p.n = 4;
    graphs.push_back(generate(GraphFamily::Complete, p));
    p.n = 10;
    graphs.push_back(generate(GraphFamily::Cycle, p));
    p.n = 0;
    p.rows = 5;
    p.cols = 6;
    p.random_weights = WeightRange{0.2, 3.0};
    graphs.push_back(generate(GraphFamily::Grid2d, p));
    p.n = 30;
    p.p = 0.2;
    p.seed = 11;
    graphs.push_back(generate(GraphFamily::Gnp, p));
  }
  std::size_t runs = 0;
  std::size_t restarts = 0;
  double largest = 0.0;
  bool search_ok = true;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (double p : {1.0, 2.0, 3.0}) {
      LiouvilleSearchConfig cfg;
      cfg.p = p;
      cfg.bound = 1.0;
      cfg.restarts = 10000;
      cfg.steps = 1000;
      cfg.seed = 100 * gi + static_cast<std::uint64_t>(p);
      const auto result = liouville_search(graphs[gi], cfg);
      ++runs;
      restarts += result.restarts_run;
      largest = std::max(largest, result.largest_feasible);
      search_ok = search_ok && !result.counterexample && result.restarts_run == cfg.restarts;
    }

  // Exhaustive grids on graphs of at most five vertices.
  std::vector<WeightedGraph> small{fixtures::from_oracle(fixtures::kP2), fixtures::from_oracle(fixtures::kP3),
                                   fixtures::from_oracle(fixtures::kK3)};
  {
    GenerateParams p;
    p.n = 4;
    small.push_back(generate(GraphFamily::Cycle, p));
    p.n = 5;
    small.push_back(generate(GraphFamily::Star, p));
    small.push_back(generate(GraphFamily::Path, p));
    p.random_weights = WeightRange{0.2, 3.0};
    small.push_back(generate(GraphFamily::Complete, p));
  }
  bool grid_ok = true;
  std::size_t grids = 0;
  for (const auto& g : small)
    for (double p : {1.0, 2.0, 3.0}) {
      const auto feasible = liouville_grid_feasible(g, p, 1.0, 0.1);
      ++grids;
      grid_ok = grid_ok && feasible.size() == 1 && std::all_of(feasible[0].begin(), feasible[0].end(),
                                                               [](double x) { return x == 0.0; });
    }
  return {search_ok && grid_ok, "searches=" + std::to_string(runs) + " restarts=" + std::to_string(restarts) +
                                    fmt(" largest_feasible=%.3e", largest) + " grids=" + std::to_string(grids) +
                                    (grid_ok ? " grid_feasible=only_zero" : " grid_feasible=NONZERO")};
}

Outcome strong_max_principle() {
  constexpr std::size_t kTrials = 10000;
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kTrials; ++i) {
    const auto g = corpus_graph(i);
    const std::size_t n = g.vertex_count();
    auto rng = Rng::stream(8, i);
    VertexFunction u;
    switch (i % 4) {
      case 0:  // generic
        u = random_real(n, rng, -1.0, 1.0, 0.1);
        break;
      case 1: {  // constant plus rounding-scale noise
        const double c = rng.uniform(-5.0, 5.0);
        std::vector<double> v(n);
        for (auto& x : v) x = c + rng.uniform(-1e-12, 1e-12);
        u = VertexFunction(std::move(v));
        break;
      }
      case 2: {  // harmonic off a random boundary, subharmonic except there
        std::vector<DirichletValue> bc{{0, rng.uniform(-1.0, 1.0)}, {n - 1, rng.uniform(-1.0, 1.0)}};
        u = solve_linear_schrodinger(g, Potential::constant(n, 0.0), VertexFunction::constant(n, 0.0), bc, 1e-12)
                .first;
        break;
      }
      default:  // exact constant
        u = VertexFunction::constant(n, rng.uniform(-5.0, 5.0));
        break;
    }
    ++counts[static_cast<int>(check_strong_max_principle(g, u).kind)];
  }
  const auto violations = counts[static_cast<int>(MaxPrincipleKind::Violation)];
  return {violations == 0,
          "trials=" + std::to_string(kTrials) +
              " not_subharmonic=" + std::to_string(counts[static_cast<int>(MaxPrincipleKind::NotSubharmonic)]) +
              " constant_confirmed=" + std::to_string(counts[static_cast<int>(MaxPrincipleKind::ConstantConfirmed)]) +
              " violation=" + std::to_string(violations)};
}

Outcome conservation() {
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  double oracle_drift = 0.0;
  double reversal = 0.0;
  const std::size_t graphs = 6;
  for (std::size_t f = 0; f < graphs; ++f) {
    const auto g = corpus_graph(f + 6);
    auto rng = Rng::stream(9, f);
    const auto u0 = random_complex(g.vertex_count(), rng, 1.0);
    EvolutionConfig cfg;
    cfg.scheme = Scheme::SchrodingerCn;
    cfg.dt = 0.01;
    cfg.steps = 1000;
    const auto result = schrodinger_evolve(g, u0, cfg);
    const auto& first = result.trace.rows.front();
    for (const auto& row : result.trace.rows) {
      mass_drift = std::max(mass_drift, std::abs(row.mass - first.mass) / first.mass);
      energy_drift = std::max(energy_drift, std::abs(row.dirichlet_energy - first.dirichlet_energy) /
                                                std::max(1.0, first.dirichlet_energy));
    }
    const auto edges = fixtures::oracle_edges(g);
    const auto start = complex_values(g, u0);
    const auto end = complex_values(g, result.state);
    const double m0 = oracle_mass(edges, start);
    const double e0 = oracle_energy(edges, start);
    oracle_drift = std::max({oracle_drift, std::abs(oracle_mass(edges, end) - m0) / m0,
                             std::abs(oracle_energy(edges, end) - e0) / std::max(1.0, e0)});

    auto u = u0.as_complex();
    CayleyStep(g, 0.01).apply(u);
    CayleyStep(g, -0.01).apply(u);
    const auto original = u0.as_complex();
    for (std::size_t v = 0; v < u.size(); ++v) reversal = std::max(reversal, std::abs(u[v] - original[v]));
  }
  const bool pass = mass_drift <= 1e-10 && energy_drift <= 1e-10 && oracle_drift <= 1e-10 && reversal <= 1e-9;
  return {pass, "graphs=" + std::to_string(graphs) + " steps=1000 dt=0.01" + fmt(" mass_drift=%.3e", mass_drift) +
                    fmt(" energy_drift=%.3e", energy_drift) + fmt(" oracle_drift=%.3e", oracle_drift) +
                    fmt(" reversal_error=%.3e", reversal)};
}

double max_free_energy_drift(const EvolutionTrace& trace) {
  double worst = 0.0;
  for (const auto& row : trace.rows)
    worst = std::max(worst, std::abs(row.free_energy - trace.rows.front().free_energy));
  return worst;
}

Outcome gross_pitaevskii() {
  double mass_drift = 0.0;
  double ratio_lo = kInf;
  double ratio_hi = 0.0;
  const std::size_t graphs = 6;
  for (std::size_t f = 0; f < graphs; ++f) {
    const auto g = corpus_graph(f + 12);
    auto rng = Rng::stream(10, f);
    const auto u0 = random_complex(g.vertex_count(), rng, 1.0);
    EvolutionConfig cfg;
    cfg.scheme = Scheme::GpStrang;
    cfg.dt = 0.01;
    cfg.steps = 1000;
    const auto coarse = gp_evolve(g, u0, cfg);
    const auto& first = coarse.trace.rows.front();
    for (const auto& row : coarse.trace.rows)
      mass_drift = std::max(mass_drift, std::abs(row.mass - first.mass) / first.mass);

    // Same horizon at half the step, compared at the coarse times.
    cfg.dt = 0.005;
    cfg.steps = 2000;
    cfg.stride = 2;
    const auto fine = gp_evolve(g, u0, cfg);
    const double ratio = max_free_energy_drift(coarse.trace) / max_free_energy_drift(fine.trace);
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
  }
  const bool pass = mass_drift <= 1e-10 && ratio_lo >= 3.2 && ratio_hi <= 4.8;
  return {pass, "graphs=" + std::to_string(graphs) + fmt(" mass_drift=%.3e", mass_drift) +
                    fmt(" drift_ratio_min=%.4f", ratio_lo) + fmt(" drift_ratio_max=%.4f", ratio_hi)};
}

Outcome heat() {
  double envelope_min = kInf;
  double mean_drift = 0.0;
  bool certificates = true;
  const std::size_t runs = 60;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto g = corpus_graph(i);
    auto rng = Rng::stream(11, i);
    const auto u0 = random_real(g.vertex_count(), rng, -1.0, 1.0, 0.1);
    EvolutionConfig cfg;
    cfg.scheme = Scheme::HeatImplicit;
    cfg.dt = 0.05 * static_cast<double>(1 + i % 5);
    cfg.steps = 200;
    const auto result = evolve_heat(g, u0, cfg);
    const auto cert = check_parabolic_max(result.diag, 1e-12);
    certificates = certificates && cert.pass;
    for (std::size_t n = 1; n < result.diag.max.size(); ++n)
      envelope_min = std::min({envelope_min, result.diag.max[n - 1] - result.diag.max[n],
                               result.diag.min[n] - result.diag.min[n - 1]});
    double start = 0.0;
    double end = 0.0;
    const auto a = u0.real();
    const auto b = result.state.real();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      start += g.degree(v) * a[v];
      end += g.degree(v) * b[v];
    }
    mean_drift = std::max(mean_drift, std::abs(end - start));
  }

  // C3 from (0, 1, 0) against the dense oracle and the uniform limit.
  const auto c3 = fixtures::from_oracle(fixtures::kK3);
  const auto u0 = fixtures::real_function(c3, {{"a", 0.0}, {"b", 1.0}, {"c", 0.0}});
  EvolutionConfig cfg;
  cfg.scheme = Scheme::HeatImplicit;
  cfg.dt = 0.5;
  cfg.steps = 200;
  const auto result = evolve_heat(c3, u0, cfg);
  const std::vector<std::string> order{"a", "b", "c"};
  const auto dense = oracle::heat_dense(oracle::laplacian_matrix(fixtures::kK3, order), Eigen::Vector3d(0, 1, 0),
                                        cfg.dt, static_cast<int>(cfg.steps));
  double to_uniform = 0.0;
  double to_oracle = 0.0;
  for (std::size_t v = 0; v < 3; ++v) {
    to_uniform = std::max(to_uniform, std::abs(result.state.real()[v] - 1.0 / 3.0));
    to_oracle = std::max(to_oracle, std::abs(result.state.real()[v] - dense(static_cast<Eigen::Index>(v))));
  }
  bool strictly_decreasing = true;
  for (std::size_t n = 1; n < result.diag.max.size() && result.diag.max[n - 1] - 1.0 / 3.0 > 1e-12; ++n)
    strictly_decreasing = strictly_decreasing && result.diag.max[n] < result.diag.max[n - 1];

  const bool pass = certificates && envelope_min >= -1e-12 && mean_drift <= 1e-10 && to_uniform <= 1e-8 &&
                    to_oracle <= 1e-12 && strictly_decreasing;
  return {pass, "runs=" + std::to_string(runs) + fmt(" envelope_min_slack=%.3e", envelope_min) +
                    fmt(" mean_drift=%.3e", mean_drift) + fmt(" c3_to_uniform=%.3e", to_uniform) +
                    fmt(" c3_to_oracle=%.3e", to_oracle)};
}

Outcome spectral() {
  double kn_error = 0.0;
  double kn_exact_error = 0.0;
  for (std::size_t n = 3; n <= 8; ++n) {
    GenerateParams p;
    p.n = n;
    const auto g = generate(GraphFamily::Complete, p);
    const auto pairs = spectrum_smallest(g, n);
    const auto dense = oracle::spectrum(fixtures::oracle_edges(g),
                                        std::vector<std::string>(g.vertices().begin(), g.vertices().end()));
    const double expected = static_cast<double>(n) / static_cast<double>(n - 1);
    kn_error = std::max(kn_error, std::abs(pairs[1].eigenvalue - dense[1]));
    kn_exact_error = std::max(kn_exact_error, std::abs(pairs[1].eigenvalue - expected));
  }

  double lo = kInf;
  double hi = -kInf;
  std::size_t graphs = 0;
  for (std::size_t i = 0; i < 60; ++i) {
    const auto g = corpus_graph(i);
    for (const auto& pair : spectrum_smallest(g, g.vertex_count())) {
      lo = std::min(lo, pair.eigenvalue);
      hi = std::max(hi, pair.eigenvalue);
    }
    ++graphs;
  }
  // Bipartite graph above the dense limit: iterative path, top of spectrum at 2.
  {
    GenerateParams p;
    p.rows = 24;
    p.cols = 25;
    p.random_weights = WeightRange{0.5, 2.0};
    const auto g = generate(GraphFamily::Grid2d, p);
    for (const auto& pair : spectrum_smallest(g, 4)) {
      lo = std::min(lo, pair.eigenvalue);
      hi = std::max(hi, pair.eigenvalue);
    }
    ++graphs;
  }
  const bool pass = kn_error <= 1e-8 && kn_exact_error <= 1e-8 && lo >= -1e-10 && hi <= 2.0 + 1e-10;
  return {pass, fmt("kn_vs_dense=%.3e", kn_error) + fmt(" kn_vs_n/(n-1)=%.3e", kn_exact_error) +
                    " graphs=" + std::to_string(graphs) + fmt(" min_eigenvalue=%.3e", lo) +
                    fmt(" max_eigenvalue=%.17g", hi)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kato-1", kato1},
      {"product-rule", product_rule},
      {"kato-2", kato2},
      {"gl-bound", gl_bound},
      {"sub-solution", subsolution},
      {"gradient-estimate", gradient_estimate},
      {"liouville", liouville},
      {"strong-max-principle", strong_max_principle},
      {"schrodinger-conservation", conservation},
      {"gross-pitaevskii", gross_pitaevskii},
      {"heat-parabolic", heat},
      {"spectrum", spectral},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !outcome.pass;
    std::printf("criterion %2zu %-25s %s  %s  (%.2fs)\n", i + 1, criteria[i].first, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
