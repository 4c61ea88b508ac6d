#include "calculus.hpp"

#include <algorithm>

#include "errors.hpp"

namespace graphcalc::calculus {

namespace {

template <class T>
std::vector<T> apply_laplacian(const WeightedGraph& g, std::span<const T> u) {
  std::vector<T> out(u.size());
  laplacian_into<T>(g, u, out);
  return out;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

template <class F>
VertexFunction map_real(const VertexFunction& u, F f) {
  auto values = u.real();
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), f);
  return VertexFunction(std::move(out));
}

}  // namespace

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  return u.visit([&](auto values) { return VertexFunction(apply_laplacian(g, values)); });
}

VertexFunction grad_sq(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  return u.visit([&](auto values) {
    std::vector<double> out(values.size());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) out[x] = grad_sq_at(g, values, x);
    return VertexFunction(std::move(out));
  });
}

VertexFunction abs_fn(const VertexFunction& u) {
  std::vector<double> out(u.size());
  for (VertexIndex x = 0; x < u.size(); ++x) out[x] = u.abs(x);
  return VertexFunction(std::move(out));
}

VertexFunction pos_part(const VertexFunction& u) {
  return map_real(u, [](double x) { return std::max(x, 0.0); });
}

VertexFunction sign_fn(const VertexFunction& u) { return map_real(u, sign_of); }

VertexFunction sign_plus(const VertexFunction& u) {
  return map_real(u, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
}

CertificateReport check_kato1(const WeightedGraph& g, const VertexFunction& u, double tol) {
  require_domain(g, u);
  const auto modulus = abs_fn(u);
  const auto m = modulus.real();
  std::vector<SlackEntry> slack;
  slack.reserve(g.vertex_count());
  u.visit([&](auto values) {
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
      slack.push_back({g.name(x), grad_sq_at(g, values, x) - grad_sq_at(g, m, x)});
  });
  return CertificateReport::make("kato1", tol, std::move(slack));
}

CertificateReport check_product_rule(const WeightedGraph& g, const VertexFunction& u, double tol) {
  require_domain(g, u);
  std::vector<SlackEntry> slack;
  slack.reserve(g.vertex_count());
  u.visit([&](auto values) {
    std::vector<double> squared(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) squared[i] = std::norm(values[i]);
    const auto lap = apply_laplacian(g, values);
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
      double lhs = laplacian_at<double>(g, squared, x);
      double cross = 2.0 * std::real(std::conj(values[x]) * lap[x]);
      double residual = lhs - cross - grad_sq_at(g, values, x);
      slack.push_back({g.name(x), -std::abs(residual)});
    }
  });
  return CertificateReport::make("product_rule", tol, std::move(slack));
}

std::pair<CertificateReport, CertificateReport> check_kato2(const WeightedGraph& g, const VertexFunction& u,
                                                            double tol) {
  require_domain(g, u);
  const auto values = u.real();
  const auto lap = apply_laplacian(g, values);
  const auto modulus = abs_fn(u);
  const auto positive = pos_part(u);
  const auto lap_abs = apply_laplacian(g, modulus.real());
  const auto lap_pos = apply_laplacian(g, positive.real());

  std::vector<SlackEntry> first, second;
  first.reserve(g.vertex_count());
  second.reserve(g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    first.push_back({g.name(x), lap_abs[x] - sign_of(values[x]) * lap[x]});
    second.push_back({g.name(x), lap_pos[x] - (values[x] > 0.0 ? lap[x] : 0.0)});
  }
  return {CertificateReport::make("kato2_abs", tol, std::move(first)),
          CertificateReport::make("kato2_positive_part", tol, std::move(second))};
}

Complex inner_product(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& v) {
  require_domain(g, u);
  require_domain(g, v);
  const auto a = u.as_complex();
  const auto b = v.as_complex();
  Complex acc{};
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) acc += g.degree(x) * a[x] * std::conj(b[x]);
  return acc;
}

double mass(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  return u.visit([&](auto values) { return mass(g, values); });
}

double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  return u.visit([&](auto values) { return dirichlet_energy(g, values); });
}

double free_energy(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  return u.visit([&](auto values) { return free_energy(g, values); });
}

}  // namespace graphcalc::calculus
