#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "calculus.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "operators.hpp"

namespace graphcalc::elliptic {

namespace {

struct RitzResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // orthonormal columns, eigenvectors of the normalized operator
};

RitzResult dense_smallest(const SparseMatrix& op, std::size_t k) {
  const Eigen::MatrixXd dense(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  const auto kk = static_cast<Eigen::Index>(k);
  return {solver.eigenvalues().head(kk), solver.eigenvectors().leftCols(kk)};
}

// Appends the columns of `block` to basis[:, 0:used) after two passes of
// Gram-Schmidt, dropping columns that are numerically dependent.
Eigen::Index extend_basis(Eigen::MatrixXd& basis, Eigen::Index used, const Eigen::MatrixXd& block) {
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    Eigen::VectorXd v = block.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      if (used > 0) v -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
    const double remaining = v.norm();
    if (remaining <= 1e-10 * original) continue;
    basis.col(used++) = v / remaining;
  }
  return used;
}

// Restarted block Krylov iteration with Rayleigh-Ritz extraction. The block
// keeps a few more vectors than requested so clustered eigenvalues converge
// together.
RitzResult krylov_smallest(const SparseMatrix& op, std::size_t k, const Eigen::VectorXd& inv_sqrt_degree,
                           double tol) {
  const Eigen::Index n = op.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::Index block = std::min<Eigen::Index>(n, kk + std::max<Eigen::Index>(4, kk / 2));
  constexpr Eigen::Index kDepth = 12;
  constexpr int kMaxRestarts = 2000;
  const Eigen::Index capacity = std::min<Eigen::Index>(n, block * (kDepth + 1));

  Rng rng(0x5eed);
  Eigen::MatrixXd start(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) start(i, j) = rng.uniform(-1.0, 1.0);

  Eigen::MatrixXd x = start;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Eigen::MatrixXd basis(n, capacity);
    Eigen::Index used = extend_basis(basis, 0, x);
    Eigen::Index level_begin = 0;
    for (Eigen::Index depth = 0; depth < kDepth && used < capacity; ++depth) {
      const Eigen::Index level_end = used;
      if (level_end == level_begin) break;
      Eigen::MatrixXd next = op * basis.middleCols(level_begin, level_end - level_begin);
      Eigen::Index room = capacity - used;
      if (next.cols() > room) next.conservativeResize(Eigen::NoChange, room);
      used = extend_basis(basis, used, next);
      level_begin = level_end;
    }
    const auto q = basis.leftCols(used);
    const Eigen::MatrixXd projected = q.transpose() * (op * q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
    if (small.info() != Eigen::Success) break;
    const Eigen::Index keep = std::min(block, used);
    x = q * small.eigenvectors().leftCols(keep);

    const Eigen::VectorXd theta = small.eigenvalues().head(kk);
    const Eigen::MatrixXd residual = op * x.leftCols(kk) - x.leftCols(kk) * theta.asDiagonal();
    // Residual of -Δφ - λφ for φ = D^{-1/2} z.
    const double worst = (inv_sqrt_degree.asDiagonal() * residual).cwiseAbs().maxCoeff();
    if (worst <= 0.25 * tol) return {theta, x.leftCols(kk)};
  }
  throw Error(ErrorCode::ConvergenceFailure, "block Krylov iteration did not reach the residual tolerance");
}

}  // namespace

std::vector<SpectralPair> spectrum_smallest(const WeightedGraph& g, std::size_t k, double tol,
                                            SpectrumMethod method) {
  const std::size_t n = g.vertex_count();
  if (k < 1 || k > n) throw Error(ErrorCode::BadParams, "need 1 <= k <= |X|");
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParams, "tol must be positive");

  const SparseMatrix op = normalized_laplacian(g);
  Eigen::VectorXd inv_sqrt_degree(static_cast<Eigen::Index>(n));
  for (VertexIndex x = 0; x < n; ++x) inv_sqrt_degree(x) = 1.0 / std::sqrt(g.degree(x));

  const bool dense = method == SpectrumMethod::Dense || (method == SpectrumMethod::Auto && n <= kDenseSpectrumLimit);
  const RitzResult ritz = dense ? dense_smallest(op, k) : krylov_smallest(op, k, inv_sqrt_degree, tol);

  std::vector<SpectralPair> pairs;
  pairs.reserve(k);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(k); ++j) {
    // φ = D^{-1/2} ψ is d-orthonormal when ψ is orthonormal.
    Eigen::VectorXd phi = inv_sqrt_degree.asDiagonal() * ritz.vectors.col(j);
    Eigen::Index lead = 0;
    const double peak = phi.cwiseAbs().maxCoeff(&lead);
    for (Eigen::Index i = 0; i < phi.size(); ++i)
      if (std::abs(phi(i)) > 1e-6 * peak) {
        lead = i;
        break;
      }
    if (phi(lead) < 0.0) phi = -phi;

    std::vector<double> values(phi.data(), phi.data() + phi.size());
    const double lambda = ritz.values(j);
    double residual = 0.0;
    for (VertexIndex x = 0; x < n; ++x)
      residual = std::max(residual, std::abs(-calculus::laplacian_at<double>(g, values, x) - lambda * values[x]));
    if (residual > tol)
      throw Error(ErrorCode::ConvergenceFailure, "eigenpair " + std::to_string(j) + " residual " +
                                                     std::to_string(residual) + " exceeds tol");
    pairs.push_back({lambda, VertexFunction(std::move(values))});
  }
  return pairs;
}

nlohmann::json to_json(const WeightedGraph& g, const std::vector<SpectralPair>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& pair : pairs)
    out.push_back({{"eigenvalue", pair.eigenvalue}, {"eigenvector", to_json(g, pair.eigenvector)}});
  return out;
}

}  // namespace graphcalc::elliptic
