#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "graph.hpp"
#include "vertex_function.hpp"

namespace graphcalc::calculus {

// Kernels over raw values indexed by canonical vertex order. Neighbor sums
// always run in canonical order so results are bitwise reproducible.

/// (Δu)(x) = Σ_{y~x} (μ_xy / d_x)(u(y) - u(x))
template <class T>
T laplacian_at(const WeightedGraph& g, std::span<const T> u, VertexIndex x) {
  T acc{};
  const T ux = u[x];
  for (const auto& nb : g.neighbors(x)) acc += nb.weight * (u[nb.vertex] - ux);
  return acc / g.degree(x);
}

template <class T>
void laplacian_into(const WeightedGraph& g, std::span<const T> u, std::span<T> out) {
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) out[x] = laplacian_at(g, u, x);
}

/// |∇u|²(x) = Σ_{y~x} (μ_xy / d_x)|u(y) - u(x)|²
template <class T>
double grad_sq_at(const WeightedGraph& g, std::span<const T> u, VertexIndex x) {
  double acc = 0.0;
  const T ux = u[x];
  for (const auto& nb : g.neighbors(x)) acc += nb.weight * std::norm(u[nb.vertex] - ux);
  return acc / g.degree(x);
}

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u);
/// Always real-valued.
VertexFunction grad_sq(const WeightedGraph& g, const VertexFunction& u);

/// Pointwise modulus; accepts complex input.
VertexFunction abs_fn(const VertexFunction& u);
/// max(u, 0); real only.
VertexFunction pos_part(const VertexFunction& u);
/// sign with sign(0) = 0; real only.
VertexFunction sign_fn(const VertexFunction& u);
/// 1 where u > 0, else 0; real only.
VertexFunction sign_plus(const VertexFunction& u);

/// slack = |∇u|² - |∇|u||²
CertificateReport check_kato1(const WeightedGraph& g, const VertexFunction& u, double tol = kDefaultTolerance);

/// slack = -|Δ(|u|²) - 2 Re(conj(u) Δu) - |∇u|²|
CertificateReport check_product_rule(const WeightedGraph& g, const VertexFunction& u,
                                     double tol = kDefaultTolerance);

/// First: Δ|u| - sign(u)Δu. Second: Δu₊ - sign₊(u)Δu. Real u only.
std::pair<CertificateReport, CertificateReport> check_kato2(const WeightedGraph& g, const VertexFunction& u,
                                                            double tol = kDefaultTolerance);

/// ⟨u, v⟩ = Σ d_x u(x) conj(v(x))
Complex inner_product(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& v);

/// Σ d_x |u(x)|²
double mass(const WeightedGraph& g, const VertexFunction& u);
/// Σ over edges μ_xy |u(x) - u(y)|², equal to ⟨-Δu, u⟩.
double dirichlet_energy(const WeightedGraph& g, const VertexFunction& u);
/// ½ dirichlet_energy + ¼ Σ d_x (1 - |u(x)|²)²
double free_energy(const WeightedGraph& g, const VertexFunction& u);

// Span forms used by the solvers and evolution loops.
template <class T>
double mass(const WeightedGraph& g, std::span<const T> u) {
  double acc = 0.0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) acc += g.degree(x) * std::norm(u[x]);
  return acc;
}

template <class T>
double dirichlet_energy(const WeightedGraph& g, std::span<const T> u) {
  double acc = 0.0;
  for (const auto& e : g.edges()) acc += e.weight * std::norm(u[e.first] - u[e.second]);
  return acc;
}

template <class T>
double free_energy(const WeightedGraph& g, std::span<const T> u) {
  double potential = 0.0;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    double gap = 1.0 - std::norm(u[x]);
    potential += g.degree(x) * gap * gap;
  }
  return 0.5 * dirichlet_energy(g, u) + 0.25 * potential;
}

}  // namespace graphcalc::calculus
