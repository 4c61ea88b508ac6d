#include "graphcalc/graphcalc.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "graph.hpp"
#include "vertex_function.hpp"

struct gc_graph {
  graphcalc::WeightedGraph graph;
};

struct gc_function {
  graphcalc::VertexFunction fn;
};

namespace {

using graphcalc::Error;
using graphcalc::ErrorCode;
using graphcalc::VertexFunction;
using nlohmann::json;

thread_local std::string last_error;

// gc_status_name relies on the status values following ErrorCode order.
static_assert(GC_ERR_SELF_LOOP == static_cast<int>(ErrorCode::SelfLoop) + 1);
static_assert(GC_ERR_INVALID_POTENTIAL == static_cast<int>(ErrorCode::InvalidPotential) + 1);

gc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return GC_ERR_SELF_LOOP;
    case ErrorCode::DuplicateEdge: return GC_ERR_DUPLICATE_EDGE;
    case ErrorCode::NonPositiveWeight: return GC_ERR_NON_POSITIVE_WEIGHT;
    case ErrorCode::Disconnected: return GC_ERR_DISCONNECTED;
    case ErrorCode::EmptyGraph: return GC_ERR_EMPTY_GRAPH;
    case ErrorCode::DisconnectedDraw: return GC_ERR_DISCONNECTED_DRAW;
    case ErrorCode::BadParams: return GC_ERR_BAD_PARAMS;
    case ErrorCode::DomainMismatch: return GC_ERR_DOMAIN_MISMATCH;
    case ErrorCode::NonFinite: return GC_ERR_NON_FINITE;
    case ErrorCode::ComplexNotAllowed: return GC_ERR_COMPLEX_NOT_ALLOWED;
    case ErrorCode::Parse: return GC_ERR_PARSE;
    case ErrorCode::Io: return GC_ERR_IO;
    case ErrorCode::SingularSystem: return GC_ERR_SINGULAR_SYSTEM;
    case ErrorCode::IncompatibleRhs: return GC_ERR_INCOMPATIBLE_RHS;
    case ErrorCode::SingularJacobian: return GC_ERR_SINGULAR_JACOBIAN;
    case ErrorCode::NotASolution: return GC_ERR_NOT_A_SOLUTION;
    case ErrorCode::NegativeInput: return GC_ERR_NEGATIVE_INPUT;
    case ErrorCode::BadStart: return GC_ERR_BAD_START;
    case ErrorCode::LinearSolveFailure: return GC_ERR_LINEAR_SOLVE_FAILURE;
    case ErrorCode::ConvergenceFailure: return GC_ERR_CONVERGENCE_FAILURE;
    case ErrorCode::InvalidPotential: return GC_ERR_INVALID_POTENTIAL;
  }
  return GC_ERR_INTERNAL;
}

template <class F>
gc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("parse: ") + e.what();
    return GC_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GC_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return GC_ERR_INTERNAL;
  }
}

#define GC_REQUIRE(p)                                                   \
  do {                                                                  \
    if ((p) == nullptr) {                                               \
      last_error = std::string("null argument: ") + #p;                 \
      return GC_ERR_NULL_ARGUMENT;                                      \
    }                                                                   \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out != nullptr) *out = dup_string(j.dump(2));
}

void emit_report(gc_check_result* result, char** report, const graphcalc::CertificateReport& r) {
  if (result != nullptr) *result = {r.pass ? 1 : 0, r.min_slack};
  emit(report, graphcalc::to_json(r));
}

gc_function* wrap(VertexFunction fn) { return new gc_function{std::move(fn)}; }

void require_matches(const gc_graph* g, const gc_function* u) { graphcalc::require_domain(g->graph, u->fn); }

}  // namespace

extern "C" {

const char* gc_version(void) { return GRAPHCALC_VERSION; }

const char* gc_status_name(gc_status status) {
  switch (status) {
    case GC_OK: return "ok";
    case GC_ERR_NULL_ARGUMENT: return "NullArgument";
    case GC_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status > GC_OK && status < GC_ERR_NULL_ARGUMENT)
    return graphcalc::to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
  return "Unknown";
}

const char* gc_last_error(void) { return last_error.c_str(); }

void gc_string_free(char* s) { std::free(s); }

gc_generate_params gc_generate_defaults(void) {
  gc_generate_params p{};
  p.p = 0.5;
  p.weight = 1.0;
  return p;
}

gc_status gc_graph_load(const char* path, gc_graph** out) {
  GC_REQUIRE(path);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new gc_graph{graphcalc::load_edge_list(path)}; });
}

gc_status gc_graph_parse(const char* text, gc_graph** out) {
  GC_REQUIRE(text);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new gc_graph{graphcalc::parse_edge_list(text)}; });
}

gc_status gc_graph_generate(const char* family, const gc_generate_params* params, gc_graph** out) {
  GC_REQUIRE(family);
  GC_REQUIRE(params);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto fam = graphcalc::parse_family(family);
    if (!fam) throw Error(ErrorCode::BadParams, std::string("unknown family '") + family + "'");
    graphcalc::GenerateParams p;
    p.n = params->n;
    p.rows = params->rows;
    p.cols = params->cols;
    p.p = params->p;
    p.weight = params->weight;
    p.seed = params->seed;
    if (params->random_weights) p.random_weights = graphcalc::WeightRange{params->weight_lo, params->weight_hi};
    *out = new gc_graph{graphcalc::generate(*fam, p)};
  });
}

void gc_graph_free(gc_graph* g) { delete g; }

size_t gc_graph_vertex_count(const gc_graph* g) { return g ? g->graph.vertex_count() : 0; }

size_t gc_graph_edge_count(const gc_graph* g) { return g ? g->graph.edge_count() : 0; }

const char* gc_graph_vertex_name(const gc_graph* g, size_t v) {
  if (g == nullptr || v >= g->graph.vertex_count()) return nullptr;
  return g->graph.name(v).c_str();
}

gc_status gc_graph_vertex_index(const gc_graph* g, const char* name, size_t* out) {
  GC_REQUIRE(g);
  GC_REQUIRE(name);
  GC_REQUIRE(out);
  return guarded([&] { *out = g->graph.index_of(name); });
}

double gc_graph_degree(const gc_graph* g, size_t v) {
  if (g == nullptr || v >= g->graph.vertex_count()) return std::numeric_limits<double>::quiet_NaN();
  return g->graph.degree(v);
}

double gc_graph_d_constant(const gc_graph* g) {
  return g ? graphcalc::d_constant(g->graph) : std::numeric_limits<double>::quiet_NaN();
}

gc_status gc_graph_to_edge_list(const gc_graph* g, char** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(out);
  return guarded([&] { *out = dup_string(graphcalc::to_edge_list(g->graph)); });
}

gc_random_spec gc_random_defaults(void) { return {GC_REAL, -1.0, 1.0, 1.0, 0.0}; }

gc_status gc_function_from_json(const gc_graph* g, const char* text, gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(text);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(graphcalc::function_from_json(g->graph, json::parse(text))); });
}

gc_status gc_function_load(const gc_graph* g, const char* path, gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(path);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, std::string("cannot open '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    *out = wrap(graphcalc::function_from_json(g->graph, json::parse(text.str())));
  });
}

gc_status gc_function_random(const gc_graph* g, const gc_random_spec* spec, uint64_t seed, uint64_t stream,
                             gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(spec);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    graphcalc::RandomFunctionSpec s;
    s.kind = spec->kind == GC_COMPLEX ? graphcalc::ScalarKind::Complex : graphcalc::ScalarKind::Real;
    s.lo = spec->lo;
    s.hi = spec->hi;
    s.radius = spec->radius;
    s.zero_probability = spec->zero_probability;
    auto rng = graphcalc::Rng::stream(seed, stream);
    *out = wrap(graphcalc::random_function(g->graph.vertex_count(), s, rng));
  });
}

gc_status gc_function_constant(const gc_graph* g, gc_scalar_kind kind, double re, double im, gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto n = g->graph.vertex_count();
    *out = wrap(kind == GC_COMPLEX ? VertexFunction::constant(n, graphcalc::Complex(re, im))
                                   : VertexFunction::constant(n, re));
  });
}

gc_status gc_function_from_values(const gc_graph* g, gc_scalar_kind kind, const double* re, const double* im,
                                  gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(re);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto n = g->graph.vertex_count();
    if (kind == GC_COMPLEX) {
      std::vector<graphcalc::Complex> values(n);
      for (std::size_t i = 0; i < n; ++i) values[i] = {re[i], im ? im[i] : 0.0};
      *out = wrap(VertexFunction(std::move(values)));
    } else {
      *out = wrap(VertexFunction(std::vector<double>(re, re + n)));
    }
  });
}

void gc_function_free(gc_function* u) { delete u; }

size_t gc_function_size(const gc_function* u) { return u ? u->fn.size() : 0; }

gc_scalar_kind gc_function_kind(const gc_function* u) {
  return u && u->fn.is_complex() ? GC_COMPLEX : GC_REAL;
}

gc_status gc_function_value(const gc_function* u, size_t v, double* re, double* im) {
  GC_REQUIRE(u);
  return guarded([&] {
    if (v >= u->fn.size()) throw Error(ErrorCode::DomainMismatch, "vertex index out of range");
    graphcalc::Complex z = u->fn.is_complex() ? u->fn.complex()[v] : graphcalc::Complex(u->fn.real()[v], 0.0);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

double gc_function_max_abs(const gc_function* u) {
  if (u == nullptr) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (std::size_t v = 0; v < u->fn.size(); ++v) m = std::max(m, u->fn.abs(v));
  return m;
}

gc_status gc_function_to_json(const gc_graph* g, const gc_function* u, char** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  return guarded([&] { emit(out, graphcalc::to_json(g->graph, u->fn)); });
}

gc_status gc_laplacian(const gc_graph* g, const gc_function* u, gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(graphcalc::calculus::laplacian(g->graph, u->fn)); });
}

gc_status gc_grad_sq(const gc_graph* g, const gc_function* u, gc_function** out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(graphcalc::calculus::grad_sq(g->graph, u->fn)); });
}

gc_status gc_mass(const gc_graph* g, const gc_function* u, double* out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  return guarded([&] { *out = graphcalc::calculus::mass(g->graph, u->fn); });
}

gc_status gc_dirichlet_energy(const gc_graph* g, const gc_function* u, double* out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  return guarded([&] { *out = graphcalc::calculus::dirichlet_energy(g->graph, u->fn); });
}

gc_status gc_free_energy(const gc_graph* g, const gc_function* u, double* out) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(out);
  return guarded([&] { *out = graphcalc::calculus::free_energy(g->graph, u->fn); });
}

gc_status gc_check_kato1(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                         char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] { emit_report(result, report, graphcalc::calculus::check_kato1(g->graph, u->fn, tol)); });
}

gc_status gc_check_product_rule(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded(
      [&] { emit_report(result, report, graphcalc::calculus::check_product_rule(g->graph, u->fn, tol)); });
}

gc_status gc_check_kato2(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                         char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] {
    const auto [abs_report, pos_report] = graphcalc::calculus::check_kato2(g->graph, u->fn, tol);
    if (result != nullptr)
      *result = {abs_report.pass && pos_report.pass ? 1 : 0, std::min(abs_report.min_slack, pos_report.min_slack)};
    emit(report, json{{"abs", graphcalc::to_json(abs_report)}, {"positive_part", graphcalc::to_json(pos_report)}});
  });
}

gc_status gc_check_gradient_estimate(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                                     char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded(
      [&] { emit_report(result, report, graphcalc::elliptic::verify_gradient_estimate(g->graph, u->fn, tol)); });
}

gc_status gc_check_subsolution(const gc_graph* g, const gc_function* u, const gc_function* q, double tol,
                               const size_t* exempt, size_t exempt_count, gc_check_result* result, char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  GC_REQUIRE(q);
  if (exempt_count > 0) GC_REQUIRE(exempt);
  return guarded([&] {
    require_matches(g, q);
    const graphcalc::elliptic::Potential pot(std::vector<double>(q->fn.real().begin(), q->fn.real().end()));
    const std::vector<graphcalc::VertexIndex> ex(exempt, exempt + exempt_count);
    emit_report(result, report, graphcalc::elliptic::check_subsolution(g->graph, u->fn, pot, tol, ex));
  });
}

gc_status gc_check_liouville_premises(const gc_graph* g, const gc_function* u, double p, double bound, double tol,
                                      gc_check_result* result, char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] {
    emit_report(result, report, graphcalc::elliptic::check_liouville_premises(g->graph, u->fn, p, bound, tol));
  });
}

gc_status gc_check_strong_max_principle(const gc_graph* g, const gc_function* u, double tol, gc_max_principle* kind,
                                        char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] {
    const auto outcome = graphcalc::elliptic::check_strong_max_principle(g->graph, u->fn, tol);
    if (kind != nullptr) {
      switch (outcome.kind) {
        case graphcalc::elliptic::MaxPrincipleKind::NotSubharmonic: *kind = GC_MP_NOT_SUBHARMONIC; break;
        case graphcalc::elliptic::MaxPrincipleKind::ConstantConfirmed: *kind = GC_MP_CONSTANT_CONFIRMED; break;
        case graphcalc::elliptic::MaxPrincipleKind::Violation: *kind = GC_MP_VIOLATION; break;
      }
    }
    emit(report, graphcalc::elliptic::to_json(g->graph, outcome));
  });
}

namespace {

void fill(gc_solve_report* out, const graphcalc::elliptic::SolveReport& r) {
  if (out != nullptr) *out = {r.converged ? 1 : 0, r.iterations, r.residual, r.damping_events};
}

}  // namespace

gc_status gc_solve_ginzburg_landau(const gc_graph* g, const gc_function* init, const char* config_json,
                                   gc_function** out, gc_solve_report* report) {
  GC_REQUIRE(g);
  GC_REQUIRE(init);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    graphcalc::elliptic::GinzburgLandauConfig cfg;
    if (config_json != nullptr) cfg = graphcalc::elliptic::gl_config_from_json(json::parse(config_json));
    auto [u, r] = graphcalc::elliptic::solve_ginzburg_landau(g->graph, init->fn, cfg);
    fill(report, r);
    *out = wrap(std::move(u));
  });
}

gc_status gc_verify_gl_bound(const gc_graph* g, const gc_function* u, double tol, gc_check_result* result,
                             char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] { emit_report(result, report, graphcalc::elliptic::verify_gl_bound(g->graph, u->fn, tol)); });
}

gc_status gc_solve_linear_schrodinger(const gc_graph* g, const gc_function* q, const gc_function* f,
                                      const size_t* dirichlet_vertices, const double* dirichlet_values,
                                      size_t dirichlet_count, double tol, gc_function** out, gc_solve_report* report) {
  GC_REQUIRE(g);
  GC_REQUIRE(q);
  GC_REQUIRE(f);
  GC_REQUIRE(out);
  if (dirichlet_count > 0) {
    GC_REQUIRE(dirichlet_vertices);
    GC_REQUIRE(dirichlet_values);
  }
  *out = nullptr;
  return guarded([&] {
    require_matches(g, q);
    const graphcalc::elliptic::Potential pot(std::vector<double>(q->fn.real().begin(), q->fn.real().end()));
    std::vector<graphcalc::elliptic::DirichletValue> bc;
    for (std::size_t i = 0; i < dirichlet_count; ++i) bc.push_back({dirichlet_vertices[i], dirichlet_values[i]});
    auto [u, r] = graphcalc::elliptic::solve_linear_schrodinger(g->graph, pot, f->fn, bc, tol);
    fill(report, r);
    *out = wrap(std::move(u));
  });
}

gc_status gc_spectrum_smallest(const gc_graph* g, size_t k, double tol, double* eigenvalues, char** report) {
  GC_REQUIRE(g);
  return guarded([&] {
    const auto pairs = graphcalc::elliptic::spectrum_smallest(g->graph, k, tol);
    if (eigenvalues != nullptr)
      for (std::size_t i = 0; i < pairs.size(); ++i) eigenvalues[i] = pairs[i].eigenvalue;
    emit(report, graphcalc::elliptic::to_json(g->graph, pairs));
  });
}

gc_liouville_config gc_liouville_defaults(void) {
  const graphcalc::elliptic::LiouvilleSearchConfig d;
  return {d.p, d.bound, d.restarts, d.steps, d.seed, d.premise_tol, d.nonzero_threshold};
}

gc_status gc_liouville_search(const gc_graph* g, const gc_liouville_config* cfg, gc_liouville_result* result,
                              gc_function** counterexample) {
  GC_REQUIRE(g);
  GC_REQUIRE(cfg);
  if (counterexample != nullptr) *counterexample = nullptr;
  return guarded([&] {
    graphcalc::elliptic::LiouvilleSearchConfig c;
    c.p = cfg->p;
    c.bound = cfg->bound;
    c.restarts = cfg->restarts;
    c.steps = cfg->steps;
    c.seed = cfg->seed;
    c.premise_tol = cfg->premise_tol;
    c.nonzero_threshold = cfg->nonzero_threshold;
    auto r = graphcalc::elliptic::liouville_search(g->graph, c);
    if (result != nullptr)
      *result = {r.restarts_run, r.steps_run, r.feasible_points, r.largest_feasible, r.counterexample ? 1 : 0};
    if (counterexample != nullptr && r.counterexample) *counterexample = wrap(std::move(*r.counterexample));
  });
}

gc_status gc_liouville_grid(const gc_graph* g, double p, double bound, double resolution, double tol,
                            size_t* feasible, double* largest_feasible) {
  GC_REQUIRE(g);
  return guarded([&] {
    const auto points = graphcalc::elliptic::liouville_grid_feasible(g->graph, p, bound, resolution, tol);
    if (feasible != nullptr) *feasible = points.size();
    if (largest_feasible != nullptr) {
      double m = 0.0;
      for (const auto& pt : points)
        for (double x : pt) m = std::max(m, std::abs(x));
      *largest_feasible = m;
    }
  });
}

gc_status gc_keller_osserman_chain(const gc_graph* g, const gc_function* u, double p, double bound, size_t x0,
                                   size_t max_steps, double tol, gc_chain_outcome* outcome, char** report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u);
  return guarded([&] {
    const auto chain = graphcalc::elliptic::keller_osserman_chain(g->graph, u->fn, p, bound, x0, max_steps, tol);
    if (outcome != nullptr) *outcome = static_cast<gc_chain_outcome>(static_cast<int>(chain.outcome));
    emit(report, graphcalc::elliptic::to_json(g->graph, chain));
  });
}

gc_evolve_config gc_evolve_defaults(void) {
  const graphcalc::evolution::EvolutionConfig d;
  return {d.dt, d.steps, GC_HEAT_IMPLICIT, d.solve_tol, d.stride};
}

gc_status gc_evolve(const gc_graph* g, const gc_function* u0, const gc_evolve_config* cfg, gc_function** out,
                    gc_evolve_summary* summary, char** trace_csv, char** parabolic_report) {
  GC_REQUIRE(g);
  GC_REQUIRE(u0);
  GC_REQUIRE(cfg);
  if (out != nullptr) *out = nullptr;
  return guarded([&] {
    namespace ev = graphcalc::evolution;
    ev::EvolutionConfig c;
    c.dt = cfg->dt;
    c.steps = cfg->steps;
    c.solve_tol = cfg->solve_tol;
    c.stride = cfg->stride;
    VertexFunction state;
    ev::EvolutionTrace trace;
    gc_evolve_summary s{0.0, 0.0, 0.0, 1, std::numeric_limits<double>::infinity()};
    json parabolic = nullptr;
    switch (cfg->scheme) {
      case GC_HEAT_IMPLICIT: {
        c.scheme = ev::Scheme::HeatImplicit;
        auto r = ev::evolve_heat(g->graph, u0->fn, c);
        const auto cert = ev::check_parabolic_max(r.diag);
        s.parabolic_pass = cert.pass ? 1 : 0;
        s.parabolic_min_slack = cert.min_slack;
        parabolic = graphcalc::to_json(cert);
        state = std::move(r.state);
        trace = std::move(r.trace);
        break;
      }
      case GC_SCHRODINGER_CN: {
        c.scheme = ev::Scheme::SchrodingerCn;
        auto r = ev::schrodinger_evolve(g->graph, u0->fn, c);
        state = std::move(r.state);
        trace = std::move(r.trace);
        break;
      }
      case GC_GP_STRANG: {
        c.scheme = ev::Scheme::GpStrang;
        auto r = ev::gp_evolve(g->graph, u0->fn, c);
        state = std::move(r.state);
        trace = std::move(r.trace);
        break;
      }
      default: throw Error(ErrorCode::BadParams, "unknown scheme");
    }
    const auto& first = trace.rows.front();
    for (const auto& row : trace.rows) {
      if (first.mass > 0.0) s.mass_drift = std::max(s.mass_drift, std::abs(row.mass - first.mass) / first.mass);
      s.energy_drift = std::max(s.energy_drift, std::abs(row.dirichlet_energy - first.dirichlet_energy) /
                                                    std::max(1.0, first.dirichlet_energy));
    }
    s.free_energy_drift = std::abs(trace.rows.back().free_energy - first.free_energy);
    if (summary != nullptr) *summary = s;
    if (trace_csv != nullptr) *trace_csv = dup_string(ev::to_csv(trace));
    emit(parabolic_report, parabolic);
    if (out != nullptr) *out = wrap(std::move(state));
  });
}

}  // extern "C"
