#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "graph.hpp"

namespace graphcalc {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Symmetric weight matrix W with W(x, y) = μ_xy.
SparseMatrix weight_matrix(const WeightedGraph& g);

/// Matrix of Δ: D^{-1} W - I.
SparseMatrix laplacian_matrix(const WeightedGraph& g);

/// I - D^{-1/2} W D^{-1/2}, similar to -Δ and symmetric.
SparseMatrix normalized_laplacian(const WeightedGraph& g);

}  // namespace graphcalc
