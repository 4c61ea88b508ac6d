#pragma once

// Independent reference evaluations used by the tests. Everything here works
// from an explicit edge list and dense matrices, never through the library's
// adjacency kernels or sparse solvers.

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Edge {
  std::string x, y;
  double mu;
};

using Values = std::map<std::string, double>;

inline Values degrees(const std::vector<Edge>& edges) {
  Values d;
  for (const auto& e : edges) {
    d[e.x] += e.mu;
    d[e.y] += e.mu;
  }
  return d;
}

/// Neighbor sums straight from the defining formula, one term μ/d at a time.
template <class F>
Values neighbor_sum(const std::vector<Edge>& edges, F term) {
  const auto d = degrees(edges);
  Values out;
  for (const auto& [v, dv] : d) out[v] = 0.0;
  for (const auto& e : edges) {
    out[e.x] += e.mu / d.at(e.x) * term(e.x, e.y);
    out[e.y] += e.mu / d.at(e.y) * term(e.y, e.x);
  }
  return out;
}

inline Values laplacian(const std::vector<Edge>& edges, const Values& u) {
  return neighbor_sum(edges, [&](const std::string& x, const std::string& y) { return u.at(y) - u.at(x); });
}

inline Values grad_sq(const std::vector<Edge>& edges, const Values& u) {
  return neighbor_sum(edges, [&](const std::string& x, const std::string& y) {
    double diff = u.at(y) - u.at(x);
    return diff * diff;
  });
}

inline double d_constant(const std::vector<Edge>& edges) {
  const auto d = degrees(edges);
  double best = 0.0;
  for (const auto& e : edges) best = std::max({best, d.at(e.x) / e.mu, d.at(e.y) / e.mu});
  return best;
}

/// Dense random-walk Laplacian D^{-1}W - I over vertices in the given order.
inline Eigen::MatrixXd laplacian_matrix(const std::vector<Edge>& edges, const std::vector<std::string>& order) {
  const auto d = degrees(edges);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
  const int n = static_cast<int>(order.size());
  Eigen::MatrixXd m = -Eigen::MatrixXd::Identity(n, n);
  for (const auto& e : edges) {
    m(index[e.x], index[e.y]) += e.mu / d.at(e.x);
    m(index[e.y], index[e.x]) += e.mu / d.at(e.y);
  }
  return m;
}

/// Eigenvalues of -Δ from the general (non-symmetric) eigensolver, sorted.
inline std::vector<double> spectrum(const std::vector<Edge>& edges, const std::vector<std::string>& order) {
  const Eigen::MatrixXd minus_lap = -laplacian_matrix(edges, order);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(minus_lap);
  std::vector<double> values;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) values.push_back(solver.eigenvalues()(i).real());
  std::sort(values.begin(), values.end());
  return values;
}

/// n implicit-Euler heat steps through an explicit dense inverse.
inline Eigen::VectorXd heat_dense(const Eigen::MatrixXd& lap, Eigen::VectorXd u, double dt, int steps) {
  const Eigen::MatrixXd step = (Eigen::MatrixXd::Identity(lap.rows(), lap.cols()) - dt * lap).inverse();
  for (int i = 0; i < steps; ++i) u = step * u;
  return u;
}

}  // namespace oracle
