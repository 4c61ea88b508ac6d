// graphcalc command-line front end. Talks to the library only through the C
// interface in graphcalc/graphcalc.h.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "graphcalc/graphcalc.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

/// Relative drift above which an evolution run counts as non-conservative.
constexpr double kConservationLimit = 1e-8;

struct CliFailure {
  int exit_code;
  std::string message;
};

bool is_math_failure(gc_status s) {
  switch (s) {
    case GC_ERR_SINGULAR_SYSTEM:
    case GC_ERR_SINGULAR_JACOBIAN:
    case GC_ERR_NOT_A_SOLUTION:
    case GC_ERR_LINEAR_SOLVE_FAILURE:
    case GC_ERR_CONVERGENCE_FAILURE: return true;
    default: return false;
  }
}

void check(gc_status s) {
  if (s == GC_OK) return;
  throw CliFailure{is_math_failure(s) ? kExitCheckFailed : kExitUsage, gc_last_error()};
}

struct GraphDeleter {
  void operator()(gc_graph* g) const { gc_graph_free(g); }
};
struct FunctionDeleter {
  void operator()(gc_function* u) const { gc_function_free(u); }
};
struct StringDeleter {
  void operator()(char* s) const { gc_string_free(s); }
};
using Graph = std::unique_ptr<gc_graph, GraphDeleter>;
using Function = std::unique_ptr<gc_function, FunctionDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

json take_json(char* s) { return json::parse(take(s)); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw CliFailure{kExitUsage, "sha256 failed"};
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliFailure{kExitUsage, "cannot write '" + path + "'"};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRAPHCALC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

/// Runs body(i) for i in [0, n) on up to GRAPHCALC_THREADS workers. Results
/// are written by index, so output order never depends on scheduling.
template <class Body>
void run_trials(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::optional<CliFailure>> failures(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (const CliFailure& f) {
        failures[w] = f;
        next = n;
      } catch (const std::exception& e) {
        failures[w] = CliFailure{kExitUsage, e.what()};
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) throw *f;
}

/// Shared flags and run bookkeeping.
struct Run {
  std::vector<std::string> argv;
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::string digest_path;
  std::string digest;
  json config = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Graph load_graph(const std::string& path) {
    const auto bytes = read_file(path);
    if (!bytes) throw CliFailure{kExitUsage, "cannot read graph file '" + path + "'"};
    digest_path = path;
    digest = sha256_hex(*bytes);
    gc_graph* g = nullptr;
    check(gc_graph_parse(bytes->c_str(), &g));
    return Graph(g);
  }

  void emit_manifest(int exit_code) const {
    json m;
    m["tool"] = "graphcalc";
    m["version"] = gc_version();
    m["command_line"] = argv;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["graph"] = digest.empty() ? json(nullptr) : json{{"path", digest_path}, {"sha256", digest}};
    m["config"] = config;
    m["exit_code"] = exit_code;
    m["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (manifest_path.empty()) {
      std::cerr << m.dump() << "\n";
    } else {
      std::ofstream out(manifest_path, std::ios::binary);
      out << m.dump(2) << "\n";
    }
  }
};

Function random_function(const gc_graph* g, gc_scalar_kind kind, double lo, double hi, double zero_p,
                         std::uint64_t seed, std::uint64_t stream) {
  gc_random_spec spec = gc_random_defaults();
  spec.kind = kind;
  spec.lo = lo;
  spec.hi = hi;
  spec.zero_probability = zero_p;
  gc_function* u = nullptr;
  check(gc_function_random(g, &spec, seed, stream, &u));
  return Function(u);
}

Function load_function(const gc_graph* g, const std::string& path) {
  gc_function* u = nullptr;
  check(gc_function_load(g, path.c_str(), &u));
  return Function(u);
}

Function constant_function(const gc_graph* g, gc_scalar_kind kind, double value) {
  gc_function* u = nullptr;
  check(gc_function_constant(g, kind, value, 0.0, &u));
  return Function(u);
}

json function_json(const gc_graph* g, const gc_function* u) {
  char* s = nullptr;
  check(gc_function_to_json(g, u, &s));
  return take_json(s);
}

// ---------------------------------------------------------------------- gen

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double p = 0.5;
  double weight = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> weight_range;
  std::string out;
};

int cmd_gen(Run& run, const GenOptions& o) {
  run.seed = o.seed;
  run.config = {{"family", o.family}, {"n", o.n},         {"rows", o.rows},
                {"cols", o.cols},     {"p", o.p},         {"weight", o.weight}};
  gc_generate_params params = gc_generate_defaults();
  params.n = o.n;
  params.rows = o.rows;
  params.cols = o.cols;
  params.p = o.p;
  params.weight = o.weight;
  params.seed = o.seed;
  if (!o.weight_range.empty()) {
    params.random_weights = 1;
    params.weight_lo = o.weight_range[0];
    params.weight_hi = o.weight_range[1];
    run.config["weight_range"] = o.weight_range;
  }
  gc_graph* raw = nullptr;
  check(gc_graph_generate(o.family.c_str(), &params, &raw));
  Graph g(raw);
  char* text = nullptr;
  check(gc_graph_to_edge_list(g.get(), &text));
  const std::string edges = take(text);
  write_output(o.out, edges);
  run.digest_path = o.out.empty() ? "-" : o.out;
  run.digest = sha256_hex(edges);

  char line[256];
  std::snprintf(line, sizeof line, "vertices=%zu edges=%zu d_constant=%.17g\n", gc_graph_vertex_count(g.get()),
                gc_graph_edge_count(g.get()), gc_graph_d_constant(g.get()));
  (o.out.empty() || o.out == "-" ? std::cerr : std::cout) << line;
  return kExitOk;
}

// -------------------------------------------------------------------- check

struct CheckOptions {
  std::string kind;
  std::string graph;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  double p = 1.0;
  double bound = 1.0;
  std::size_t steps = 1000;
  std::string out;
};

struct TrialOutcome {
  bool pass = true;
  double min_slack = std::numeric_limits<double>::infinity();
  std::string label;
  json report;
};

/// Zeroing probability for calculus checks, so the u(x) = 0 branches are hit.
constexpr double kZeroProbability = 0.1;

int cmd_check_liouville(Run& run, const CheckOptions& o, const gc_graph* g) {
  gc_liouville_config cfg = gc_liouville_defaults();
  cfg.p = o.p;
  cfg.bound = o.bound;
  cfg.restarts = o.trials;
  cfg.steps = o.steps;
  cfg.seed = o.seed;
  run.config["p"] = o.p;
  run.config["A"] = o.bound;
  run.config["steps"] = o.steps;
  gc_liouville_result r{};
  gc_function* raw = nullptr;
  check(gc_liouville_search(g, &cfg, &r, &raw));
  Function counterexample(raw);
  json report = {{"check", "liouville"},
                 {"trials", o.trials},
                 {"seed", o.seed},
                 {"p", o.p},
                 {"A", o.bound},
                 {"steps_per_restart", o.steps},
                 {"restarts_run", r.restarts_run},
                 {"steps_run", r.steps_run},
                 {"feasible_points", r.feasible_points},
                 {"largest_feasible", r.largest_feasible},
                 {"pass", r.found_counterexample == 0}};
  report["counterexample"] = counterexample ? function_json(g, counterexample.get()) : json(nullptr);
  write_output(o.out, dump(report));
  return r.found_counterexample ? kExitCheckFailed : kExitOk;
}

int cmd_check_max_principle(const CheckOptions& o, const gc_graph* g) {
  std::vector<gc_max_principle> kinds(o.trials);
  std::vector<json> reports(o.trials);
  run_trials(o.trials, [&](std::size_t i) {
    // Every fourth trial is a constant function, the only admissible case.
    Function u = i % 4 == 3 ? constant_function(g, GC_REAL, static_cast<double>(i % 7) - 3.0)
                            : random_function(g, GC_REAL, -1.0, 1.0, kZeroProbability, o.seed, i);
    char* s = nullptr;
    check(gc_check_strong_max_principle(g, u.get(), o.tol, &kinds[i], &s));
    reports[i] = take_json(s);
  });
  std::size_t counts[3] = {0, 0, 0};
  json per_trial = json::array();
  for (std::size_t i = 0; i < o.trials; ++i) {
    ++counts[kinds[i]];
    per_trial.push_back(reports[i]);
  }
  json report = {{"check", "max-principle"},
                 {"trials", o.trials},
                 {"seed", o.seed},
                 {"tol", o.tol},
                 {"not_subharmonic", counts[GC_MP_NOT_SUBHARMONIC]},
                 {"constant_confirmed", counts[GC_MP_CONSTANT_CONFIRMED]},
                 {"violation", counts[GC_MP_VIOLATION]},
                 {"pass", counts[GC_MP_VIOLATION] == 0},
                 {"outcomes", per_trial}};
  write_output(o.out, dump(report));
  return counts[GC_MP_VIOLATION] == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_check(Run& run, const CheckOptions& o) {
  run.seed = o.seed;
  run.config = {{"kind", o.kind}, {"trials", o.trials}, {"tol", o.tol}};
  Graph g = run.load_graph(o.graph);
  if (o.kind == "liouville") return cmd_check_liouville(run, o, g.get());
  if (o.kind == "max-principle") return cmd_check_max_principle(o, g.get());

  std::vector<TrialOutcome> outcomes(o.trials);
  run_trials(o.trials, [&](std::size_t i) {
    TrialOutcome& t = outcomes[i];
    gc_check_result r{};
    char* s = nullptr;
    if (o.kind == "gradient-estimate") {
      Function u = random_function(g.get(), GC_REAL, 0.0, 1.0, kZeroProbability, o.seed, i);
      check(gc_check_gradient_estimate(g.get(), u.get(), o.tol, &r, &s));
      t.label = "real";
    } else {
      // Alternate real and complex functions across trials; kato2 needs sign(u).
      const gc_scalar_kind kind = i % 2 == 0 || o.kind == "kato2" ? GC_REAL : GC_COMPLEX;
      Function u = random_function(g.get(), kind, -1.0, 1.0, kZeroProbability, o.seed, i);
      t.label = kind == GC_REAL ? "real" : "complex";
      if (o.kind == "kato1")
        check(gc_check_kato1(g.get(), u.get(), o.tol, &r, &s));
      else if (o.kind == "kato2")
        check(gc_check_kato2(g.get(), u.get(), o.tol, &r, &s));
      else
        check(gc_check_product_rule(g.get(), u.get(), o.tol, &r, &s));
    }
    t.pass = r.pass != 0;
    t.min_slack = r.min_slack;
    t.report = take_json(s);
  });

  std::size_t failed = 0;
  std::size_t worst = 0;
  json per_trial = json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].pass) ++failed;
    if (outcomes[i].min_slack < outcomes[worst].min_slack) worst = i;
    per_trial.push_back({{"trial", i},
                         {"scalar", outcomes[i].label},
                         {"pass", outcomes[i].pass},
                         {"min_slack", number_or_null(outcomes[i].min_slack)}});
  }
  json report = {{"check", o.kind},
                 {"trials", o.trials},
                 {"seed", o.seed},
                 {"tol", o.tol},
                 {"passed", o.trials - failed},
                 {"failed", failed},
                 {"pass", failed == 0}};
  if (o.trials > 0) {
    report["min_slack"] = number_or_null(outcomes[worst].min_slack);
    report["worst_trial"] = worst;
    report["worst_report"] = outcomes[worst].report;
  }
  report["per_trial"] = per_trial;
  write_output(o.out, dump(report));
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------------- solve

struct SolveOptions {
  std::string problem;
  std::string graph;
  std::string init = "random";
  bool complex_init = false;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::size_t max_iters = 500;
  std::string damping = "line_search";
  std::string q = "zero";
  std::string f = "zero";
  std::string dirichlet;
  std::string out;
};

json solve_report_json(const gc_solve_report& r) {
  return {{"converged", r.converged != 0},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"damping_events", r.damping_events}};
}

int cmd_solve_gl(Run& run, const SolveOptions& o, const gc_graph* g) {
  Function init;
  if (o.init == "random")
    init = random_function(g, o.complex_init ? GC_COMPLEX : GC_REAL, -1.0, 1.0, 0.0, o.seed, 0);
  else if (o.init == "ones")
    init = constant_function(g, o.complex_init ? GC_COMPLEX : GC_REAL, 1.0);
  else if (o.init == "zeros")
    init = constant_function(g, o.complex_init ? GC_COMPLEX : GC_REAL, 0.0);
  else
    init = load_function(g, o.init);

  const json cfg = {{"tol", o.tol}, {"max_iters", o.max_iters}, {"damping", o.damping}, {"seed", o.seed}};
  run.config["solver"] = cfg;
  run.config["init"] = o.init;
  const std::string cfg_text = cfg.dump();
  gc_function* raw = nullptr;
  gc_solve_report r{};
  check(gc_solve_ginzburg_landau(g, init.get(), cfg_text.c_str(), &raw, &r));
  Function u(raw);

  json out = {{"problem", "gl"}, {"solution", function_json(g, u.get())}, {"report", solve_report_json(r)}};
  int code = kExitOk;
  if (!r.converged) {
    out["bound_certificate"] = nullptr;
    code = kExitCheckFailed;
  } else {
    gc_check_result cr{};
    char* s = nullptr;
    check(gc_verify_gl_bound(g, u.get(), o.tol, &cr, &s));
    out["bound_certificate"] = take_json(s);
    out["max_abs"] = gc_function_max_abs(u.get());
    if (!cr.pass) code = kExitCheckFailed;
  }
  write_output(o.out, dump(out));
  return code;
}

/// "zero", a number, or a JSON function file.
Function scalar_field(const gc_graph* g, const std::string& spec) {
  if (spec == "zero") return constant_function(g, GC_REAL, 0.0);
  char* end = nullptr;
  const double v = std::strtod(spec.c_str(), &end);
  if (!spec.empty() && end != spec.c_str() && *end == '\0') return constant_function(g, GC_REAL, v);
  return load_function(g, spec);
}

int cmd_solve_stationary(Run& run, const SolveOptions& o, const gc_graph* g) {
  Function q = scalar_field(g, o.q);
  Function f = scalar_field(g, o.f);
  std::vector<std::size_t> vertices;
  std::vector<double> values;
  if (!o.dirichlet.empty()) {
    std::stringstream items(o.dirichlet);
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw CliFailure{kExitUsage, "dirichlet entries must look like vertex=value"};
      std::size_t v = 0;
      check(gc_graph_vertex_index(g, item.substr(0, eq).c_str(), &v));
      char* end = nullptr;
      const std::string value = item.substr(eq + 1);
      const double x = std::strtod(value.c_str(), &end);
      if (value.empty() || *end != '\0' || !std::isfinite(x))
        throw CliFailure{kExitUsage, "bad dirichlet value '" + value + "'"};
      vertices.push_back(v);
      values.push_back(x);
    }
  }
  run.config["Q"] = o.q;
  run.config["f"] = o.f;
  run.config["dirichlet"] = o.dirichlet;
  run.config["tol"] = o.tol;

  gc_function* raw = nullptr;
  gc_solve_report r{};
  check(gc_solve_linear_schrodinger(g, q.get(), f.get(), vertices.data(), values.data(), vertices.size(), o.tol,
                                    &raw, &r));
  Function u(raw);
  json out = {{"problem", "schrodinger-stationary"},
              {"solution", function_json(g, u.get())},
              {"report", solve_report_json(r)}};
  int code = r.converged ? kExitOk : kExitCheckFailed;

  // u₊ is a sub-solution wherever the homogeneous equation holds.
  double f_max = 0.0;
  for (std::size_t v = 0; v < gc_graph_vertex_count(g); ++v) {
    double re = 0.0;
    check(gc_function_value(f.get(), v, &re, nullptr));
    f_max = std::max(f_max, std::abs(re));
  }
  if (f_max == 0.0) {
    gc_check_result cr{};
    char* s = nullptr;
    check(gc_check_subsolution(g, u.get(), q.get(), o.tol, vertices.data(), vertices.size(), &cr, &s));
    out["subsolution_certificate"] = take_json(s);
    if (!cr.pass) code = kExitCheckFailed;
  } else {
    out["subsolution_certificate"] = nullptr;
  }
  write_output(o.out, dump(out));
  return code;
}

int cmd_solve(Run& run, const SolveOptions& o) {
  run.seed = o.seed;
  run.config = {{"problem", o.problem}};
  Graph g = run.load_graph(o.graph);
  if (o.problem == "gl") return cmd_solve_gl(run, o, g.get());
  return cmd_solve_stationary(run, o, g.get());
}

// ------------------------------------------------------------------- evolve

struct EvolveOptions {
  std::string flow;
  std::string graph;
  std::string u0;
  double dt = 0.01;
  std::size_t steps = 100;
  std::size_t stride = 1;
  double solve_tol = 1e-12;
  std::string trace;
  std::string out;
};

int cmd_evolve(Run& run, const EvolveOptions& o) {
  run.config = {{"flow", o.flow}, {"dt", o.dt}, {"steps", o.steps}, {"stride", o.stride}, {"solve_tol", o.solve_tol}};
  Graph g = run.load_graph(o.graph);
  Function u0 = load_function(g.get(), o.u0);
  const bool needs_complex = o.flow != "heat";
  if (needs_complex && gc_function_kind(u0.get()) != GC_COMPLEX)
    throw CliFailure{kExitUsage, o.flow + " needs a complex initial state"};

  gc_evolve_config cfg = gc_evolve_defaults();
  cfg.dt = o.dt;
  cfg.steps = o.steps;
  cfg.stride = o.stride;
  cfg.solve_tol = o.solve_tol;
  cfg.scheme = o.flow == "heat" ? GC_HEAT_IMPLICIT : o.flow == "schrodinger" ? GC_SCHRODINGER_CN : GC_GP_STRANG;

  gc_function* raw = nullptr;
  gc_evolve_summary summary{};
  char* csv = nullptr;
  char* parabolic = nullptr;
  check(gc_evolve(g.get(), u0.get(), &cfg, &raw, &summary, &csv, &parabolic));
  Function state(raw);
  const std::string trace = take(csv);
  const json parabolic_report = take_json(parabolic);
  if (!o.trace.empty()) write_output(o.trace, trace);

  int code = kExitOk;
  if (o.flow == "heat" && !summary.parabolic_pass) code = kExitCheckFailed;
  if (o.flow == "schrodinger" &&
      (summary.mass_drift > kConservationLimit || summary.energy_drift > kConservationLimit))
    code = kExitCheckFailed;
  if (o.flow == "gp" && summary.mass_drift > kConservationLimit) code = kExitCheckFailed;

  json out = {{"flow", o.flow},
              {"state", function_json(g.get(), state.get())},
              {"mass_drift", summary.mass_drift},
              {"energy_drift", summary.energy_drift},
              {"free_energy_drift", summary.free_energy_drift},
              {"parabolic_certificate", parabolic_report},
              {"pass", code == kExitOk}};
  write_output(o.out, dump(out));
  return code;
}

// ----------------------------------------------------------------- spectrum

struct SpectrumOptions {
  std::string graph;
  std::size_t k = 2;
  double tol = 1e-8;
  std::string out;
};

int cmd_spectrum(Run& run, const SpectrumOptions& o) {
  run.config = {{"k", o.k}, {"tol", o.tol}};
  Graph g = run.load_graph(o.graph);
  char* s = nullptr;
  check(gc_spectrum_smallest(g.get(), o.k, o.tol, nullptr, &s));
  write_output(o.out, dump(json{{"eigenpairs", take_json(s)}}));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  run.argv.assign(argv, argv + argc);

  CLI::App app{"Discrete calculus, certificates and PDE solvers on weighted graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gc_version()));
  app.add_option("--manifest", run.manifest_path, "Write the run manifest here instead of stderr");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph edge list");
  gen_cmd->add_option("--family", gen.family, "path, cycle, complete, star, grid2d or gnp")->required();
  gen_cmd->add_option("--n", gen.n, "Vertex count");
  gen_cmd->add_option("--rows", gen.rows, "Grid rows");
  gen_cmd->add_option("--cols", gen.cols, "Grid columns");
  gen_cmd->add_option("--p", gen.p, "Edge probability for gnp");
  gen_cmd->add_option("--weight", gen.weight, "Uniform edge weight");
  gen_cmd->add_option("--weight-range", gen.weight_range, "Random per-edge weights in [lo, hi]")->expected(2);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("-o,--out", gen.out, "Output edge list (stdout when omitted)");

  CheckOptions chk;
  auto* check_cmd = app.add_subcommand("check", "Run a certificate over random vertex functions");
  check_cmd->add_option("kind", chk.kind)
      ->required()
      ->check(CLI::IsMember({"kato1", "kato2", "product", "gradient-estimate", "max-principle", "liouville"}));
  check_cmd->add_option("--graph", chk.graph, "Edge list file")->required();
  check_cmd->add_option("--trials", chk.trials, "Number of random functions (restarts for liouville)");
  check_cmd->add_option("--seed", chk.seed, "Random seed");
  check_cmd->add_option("--tol", chk.tol, "Slack tolerance");
  check_cmd->add_option("--p", chk.p, "Exponent for liouville");
  check_cmd->add_option("--A", chk.bound, "Upper bound for liouville");
  check_cmd->add_option("--steps", chk.steps, "Ascent steps per liouville restart");
  check_cmd->add_option("--out", chk.out, "JSON report (stdout when omitted)");

  SolveOptions sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a stationary problem");
  solve_cmd->add_option("problem", sol.problem)->required()->check(CLI::IsMember({"gl", "schrodinger-stationary"}));
  solve_cmd->add_option("--graph", sol.graph, "Edge list file")->required();
  solve_cmd->add_option("--init", sol.init, "random, ones, zeros or a JSON function file");
  solve_cmd->add_flag("--complex", sol.complex_init, "Complex random/constant initial state");
  solve_cmd->add_option("--seed", sol.seed, "Random seed");
  solve_cmd->add_option("--tol", sol.tol, "Residual tolerance");
  solve_cmd->add_option("--max-iters", sol.max_iters, "Iteration budget");
  solve_cmd->add_option("--damping", sol.damping, "line_search or none")
      ->check(CLI::IsMember({"line_search", "none"}));
  solve_cmd->add_option("--Q", sol.q, "Potential: zero, a number or a JSON function file");
  solve_cmd->add_option("--f", sol.f, "Right-hand side: zero, a number or a JSON function file");
  solve_cmd->add_option("--dirichlet", sol.dirichlet, "Boundary values, e.g. a=0,c=1");
  solve_cmd->add_option("--out", sol.out, "JSON output (stdout when omitted)");

  EvolveOptions evo;
  auto* evolve_cmd = app.add_subcommand("evolve", "Time evolution");
  evolve_cmd->add_option("flow", evo.flow)->required()->check(CLI::IsMember({"heat", "schrodinger", "gp"}));
  evolve_cmd->add_option("--graph", evo.graph, "Edge list file")->required();
  evolve_cmd->add_option("--u0", evo.u0, "Initial state JSON file")->required();
  evolve_cmd->add_option("--dt", evo.dt, "Time step");
  evolve_cmd->add_option("--steps", evo.steps, "Number of steps");
  evolve_cmd->add_option("--stride", evo.stride, "Trace stride");
  evolve_cmd->add_option("--solve-tol", evo.solve_tol, "Linear solve tolerance");
  evolve_cmd->add_option("--trace", evo.trace, "Trace CSV output");
  evolve_cmd->add_option("--out", evo.out, "Final state JSON (stdout when omitted)");

  SpectrumOptions spec;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Smallest eigenpairs of -Laplacian");
  spectrum_cmd->add_option("--graph", spec.graph, "Edge list file")->required();
  spectrum_cmd->add_option("--k", spec.k, "Number of eigenpairs");
  spectrum_cmd->add_option("--tol", spec.tol, "Residual tolerance");
  spectrum_cmd->add_option("--out", spec.out, "JSON output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int shown = app.exit(e);
    return shown == 0 ? kExitOk : kExitUsage;
  }

  int code = kExitOk;
  try {
    if (*gen_cmd)
      code = cmd_gen(run, gen);
    else if (*check_cmd)
      code = cmd_check(run, chk);
    else if (*solve_cmd)
      code = cmd_solve(run, sol);
    else if (*evolve_cmd)
      code = cmd_evolve(run, evo);
    else if (*spectrum_cmd)
      code = cmd_spectrum(run, spec);
  } catch (const CliFailure& f) {
    std::cerr << "graphcalc: " << f.message << "\n";
    code = f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "graphcalc: " << e.what() << "\n";
    code = kExitUsage;
  }
  run.emit_manifest(code);
  return code;
}
