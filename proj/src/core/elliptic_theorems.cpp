#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"

namespace graphcalc::elliptic {

namespace {

std::vector<double> laplacian_values(const WeightedGraph& g, std::span<const double> u) {
  std::vector<double> out(u.size());
  calculus::laplacian_into<double>(g, u, out);
  return out;
}

// u^p for u >= 0 with exact products for the common integer exponents.
double power(double u, double p) {
  if (p == 1.0) return u;
  if (p == 2.0) return u * u;
  if (p == 3.0) return u * u * u;
  return std::pow(u, p);
}

void require_nonnegative(std::span<const double> u) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] < 0.0) throw Error(ErrorCode::NegativeInput, "u is negative at index " + std::to_string(i));
}

}  // namespace

CertificateReport check_subsolution(const WeightedGraph& g, const VertexFunction& u, const Potential& q, double tol,
                                    std::span<const VertexIndex> exempt) {
  require_domain(g, u);
  if (q.size() != g.vertex_count()) throw Error(ErrorCode::DomainMismatch, "potential size does not match the graph");
  const auto positive = calculus::pos_part(u);
  const auto values = positive.real();
  const auto qv = q.values();
  std::vector<bool> skip(g.vertex_count(), false);
  for (auto v : exempt) skip.at(v) = true;

  std::vector<SlackEntry> slack;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (skip[x]) continue;
    slack.push_back({g.name(x), calculus::laplacian_at(g, values, x) - qv[x] * values[x]});
  }
  return CertificateReport::make("subsolution", tol, std::move(slack));
}

CertificateReport verify_gradient_estimate(const WeightedGraph& g, const VertexFunction& u, double tol) {
  require_domain(g, u);
  const auto values = u.real();
  require_nonnegative(values);
  const double d = d_constant(g);
  const auto lap = laplacian_values(g, values);

  std::vector<SlackEntry> first, second;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (!(values[x] > 0.0 && lap[x] >= 0.0)) continue;
    const double q = lap[x] / values[x];
    const double u2 = values[x] * values[x];
    const double grad = calculus::grad_sq_at(g, values, x);
    first.push_back({g.name(x), (d * (1.0 + q) * (1.0 + q) - 2.0 * q - 1.0) * u2 - grad});
    second.push_back({g.name(x), d * q * q * u2 - grad});
  }
  auto report = CertificateReport::make("gradient_estimate", tol, std::move(first));
  report.info = make_informational("gradient_estimate_second_bound", std::move(second));
  return report;
}

CertificateReport check_liouville_premises(const WeightedGraph& g, const VertexFunction& u, double p, double bound,
                                           double tol) {
  require_domain(g, u);
  if (!(p > 0.0) || !(bound > 0.0)) throw Error(ErrorCode::BadParams, "need p > 0 and A > 0");
  const auto values = u.real();
  const auto lap = laplacian_values(g, values);
  std::vector<SlackEntry> slack;
  slack.reserve(3 * g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const auto& name = g.name(x);
    slack.push_back({name + "/lower", values[x]});
    slack.push_back({name + "/upper", bound - values[x]});
    slack.push_back({name + "/growth", lap[x] - power(std::max(values[x], 0.0), p)});
  }
  return CertificateReport::make("liouville_premises", tol, std::move(slack));
}

const char* to_string(ChainOutcome outcome) noexcept {
  switch (outcome) {
    case ChainOutcome::EscapedBound: return "escaped_bound";
    case ChainOutcome::RevisitContradiction: return "revisit_contradiction";
    case ChainOutcome::PremiseViolation: return "premise_violation";
    case ChainOutcome::StepBudgetExhausted: return "step_budget_exhausted";
  }
  return "unknown";
}

nlohmann::json to_json(const WeightedGraph& g, const ChainCertificate& chain) {
  nlohmann::json vertices = nlohmann::json::array();
  for (auto v : chain.chain) vertices.push_back(g.name(v));
  nlohmann::json out{{"rho", chain.rho},
                     {"p", chain.p},
                     {"chain", vertices},
                     {"values", chain.values},
                     {"increments", chain.increments},
                     {"outcome", to_string(chain.outcome)}};
  out["witness"] = chain.witness ? nlohmann::json(g.name(*chain.witness)) : nlohmann::json(nullptr);
  return out;
}

ChainCertificate keller_osserman_chain(const WeightedGraph& g, const VertexFunction& u, double p, double bound,
                                       VertexIndex x0, std::size_t max_steps, double tol) {
  require_domain(g, u);
  if (!(p > 0.0) || !(bound > 0.0)) throw Error(ErrorCode::BadParams, "need p > 0 and A > 0");
  if (x0 >= g.vertex_count()) throw Error(ErrorCode::DomainMismatch, "start vertex out of range");
  const auto values = u.real();
  if (!(values[x0] > 0.0)) throw Error(ErrorCode::BadStart, "u(" + g.name(x0) + ") must be positive");
  require_nonnegative(values);

  ChainCertificate cert;
  cert.p = p;
  cert.rho = values[x0];
  const double rho = cert.rho;
  const double scale = power(rho, p - 1.0);
  std::vector<bool> visited(g.vertex_count(), false);

  VertexIndex x = x0;
  visited[x] = true;
  cert.chain.push_back(x);
  cert.values.push_back(values[x] / rho);

  for (std::size_t step = 0; step < max_steps; ++step) {
    if (calculus::laplacian_at(g, values, x) < power(values[x], p) - tol) {
      cert.outcome = ChainOutcome::PremiseViolation;
      cert.witness = x;
      return cert;
    }
    cert.increments.push_back(scale * power(values[x] / rho, p));

    // The weighted average of the neighbors is at least w(x) + increment, so
    // the largest neighbor is too.
    VertexIndex next = g.neighbors(x).front().vertex;
    for (const auto& nb : g.neighbors(x))
      if (values[nb.vertex] > values[next]) next = nb.vertex;

    if (visited[next]) {
      cert.outcome = ChainOutcome::RevisitContradiction;
      cert.witness = next;
      return cert;
    }
    visited[next] = true;
    cert.chain.push_back(next);
    cert.values.push_back(values[next] / rho);
    if (values[next] / rho > bound / rho) {
      cert.outcome = ChainOutcome::EscapedBound;
      cert.witness = next;
      return cert;
    }
    x = next;
  }
  cert.outcome = ChainOutcome::StepBudgetExhausted;
  return cert;
}

LiouvilleSearchResult liouville_search(const WeightedGraph& g, const LiouvilleSearchConfig& cfg) {
  if (!(cfg.p > 0.0) || !(cfg.bound > 0.0)) throw Error(ErrorCode::BadParams, "need p > 0 and A > 0");
  const std::size_t n = g.vertex_count();
  const double p = cfg.p;
  const double bound = cfg.bound;

  // Penalty P(u) = ½ Σ max(0, u^p - Δu)². Its gradient Lipschitz constant is
  // bounded by (p A^(p-1) + 2)², which sets the step.
  const double slope = p * power(bound, p - 1.0) + 2.0;
  const double step = 0.5 / (slope * slope);

  LiouvilleSearchResult result;
  std::vector<double> u(n), lap(n), violation(n), grad(n);

  // Returns true when u is feasible; records counterexamples.
  auto feasible = [&]() {
    calculus::laplacian_into<double>(g, u, lap);
    bool ok = true;
    for (VertexIndex x = 0; x < n; ++x) {
      violation[x] = power(u[x], p) - lap[x] - cfg.premise_tol;
      if (violation[x] > 0.0) ok = false;
    }
    if (!ok) return false;
    ++result.feasible_points;
    const double sup = *std::max_element(u.begin(), u.end());
    result.largest_feasible = std::max(result.largest_feasible, sup);
    if (sup > cfg.nonzero_threshold && !result.counterexample) result.counterexample = VertexFunction(u);
    return true;
  };

  for (std::size_t restart = 0; restart < cfg.restarts && !result.counterexample; ++restart) {
    Rng rng = Rng::stream(cfg.seed, restart);
    ++result.restarts_run;
    const double magnitude = bound * std::pow(10.0, -8.0 * rng.uniform01());
    const double push = std::pow(10.0, -10.0 + 8.0 * rng.uniform01());
    for (auto& value : u) value = magnitude * rng.uniform01();

    for (std::size_t s = 0; s < cfg.steps; ++s) {
      ++result.steps_run;
      if (feasible()) {
        if (result.counterexample) break;
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      for (VertexIndex x = 0; x < n; ++x) {
        if (violation[x] <= 0.0) continue;
        const double v = violation[x];
        grad[x] += v * (p * power(u[x], p - 1.0) + 1.0);
        for (const auto& nb : g.neighbors(x)) grad[nb.vertex] -= v * nb.weight / g.degree(x);
      }
      double change = 0.0, sup = 0.0;
      for (VertexIndex x = 0; x < n; ++x) {
        const double next = std::clamp(u[x] + step * (push - grad[x]), 0.0, bound);
        change = std::max(change, std::abs(next - u[x]));
        sup = std::max(sup, next);
        u[x] = next;
      }
      // Collapsed onto the zero solution or stationary: nothing left to find.
      if (sup < 1e-3 * cfg.nonzero_threshold || change <= 1e-13 * std::max(sup, cfg.nonzero_threshold)) {
        ++result.steps_run;
        feasible();
        break;
      }
    }
  }
  return result;
}

std::vector<std::vector<double>> liouville_grid_feasible(const WeightedGraph& g, double p, double bound,
                                                         double resolution, double tol) {
  if (!(p > 0.0) || !(bound > 0.0) || !(resolution > 0.0)) throw Error(ErrorCode::BadParams, "bad grid parameters");
  const std::size_t n = g.vertex_count();
  const auto levels = static_cast<std::size_t>(std::floor(bound / resolution + 1e-9)) + 1;
  std::vector<std::size_t> digits(n, 0);
  std::vector<double> u(n, 0.0);
  std::vector<std::vector<double>> feasible;
  while (true) {
    bool ok = true;
    for (VertexIndex x = 0; x < n && ok; ++x)
      ok = calculus::laplacian_at<double>(g, u, x) >= power(u[x], p) - tol;
    if (ok) feasible.push_back(u);

    std::size_t i = 0;
    while (i < n && ++digits[i] == levels) {
      digits[i] = 0;
      u[i] = 0.0;
      ++i;
    }
    if (i == n) break;
    u[i] = static_cast<double>(digits[i]) * resolution;
  }
  return feasible;
}

const char* to_string(MaxPrincipleKind kind) noexcept {
  switch (kind) {
    case MaxPrincipleKind::NotSubharmonic: return "not_subharmonic";
    case MaxPrincipleKind::ConstantConfirmed: return "constant_confirmed";
    case MaxPrincipleKind::Violation: return "violation";
  }
  return "unknown";
}

nlohmann::json to_json(const WeightedGraph& g, const MaxPrincipleOutcome& outcome) {
  nlohmann::json out{{"outcome", to_string(outcome.kind)}, {"range", outcome.range}};
  out["witness"] = outcome.witness ? nlohmann::json(g.name(*outcome.witness)) : nlohmann::json(nullptr);
  return out;
}

MaxPrincipleOutcome check_strong_max_principle(const WeightedGraph& g, const VertexFunction& u, double tol) {
  require_domain(g, u);
  const auto values = u.real();
  const std::size_t n = g.vertex_count();
  const auto lap = laplacian_values(g, values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  MaxPrincipleOutcome outcome{MaxPrincipleKind::ConstantConfirmed, std::nullopt, *hi - *lo};

  const auto worst = std::min_element(lap.begin(), lap.end());
  if (*worst < -tol) {
    outcome.kind = MaxPrincipleKind::NotSubharmonic;
    outcome.witness = static_cast<VertexIndex>(worst - lap.begin());
    return outcome;
  }

  // Allow for rounding in the computed Laplacian.
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  const double slack = tol + 64.0 * std::numeric_limits<double>::epsilon() * scale;

  // Largest admissible deficit below the maximum, propagated outward with the
  // smallest bound winning (Dijkstra; bounds only grow along a path).
  const auto top = static_cast<VertexIndex>(hi - values.begin());
  std::vector<double> allowed(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, VertexIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  allowed[top] = 0.0;
  queue.emplace(0.0, top);
  while (!queue.empty()) {
    auto [bound, x] = queue.top();
    queue.pop();
    if (bound > allowed[x]) continue;
    for (const auto& nb : g.neighbors(x)) {
      const double candidate = (g.degree(x) / nb.weight) * (slack + bound);
      if (candidate < allowed[nb.vertex]) {
        allowed[nb.vertex] = candidate;
        queue.emplace(candidate, nb.vertex);
      }
    }
  }
  for (VertexIndex y = 0; y < n; ++y) {
    if (*hi - values[y] > allowed[y]) {
      outcome.kind = MaxPrincipleKind::Violation;
      outcome.witness = y;
      return outcome;
    }
  }
  return outcome;
}

}  // namespace graphcalc::elliptic
