#include "operators.hpp"

#include <cmath>
#include <vector>

namespace graphcalc {

namespace {

template <class Entry>
SparseMatrix assemble(const WeightedGraph& g, Entry entry, double diagonal) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count() + g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    if (diagonal != 0.0) triplets.emplace_back(x, x, diagonal);
    for (const auto& nb : g.neighbors(x)) triplets.emplace_back(x, nb.vertex, entry(x, nb));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

SparseMatrix weight_matrix(const WeightedGraph& g) {
  return assemble(g, [](VertexIndex, const Neighbor& nb) { return nb.weight; }, 0.0);
}

SparseMatrix laplacian_matrix(const WeightedGraph& g) {
  return assemble(g, [&](VertexIndex x, const Neighbor& nb) { return nb.weight / g.degree(x); }, -1.0);
}

SparseMatrix normalized_laplacian(const WeightedGraph& g) {
  return assemble(
      g,
      [&](VertexIndex x, const Neighbor& nb) {
        return -nb.weight / std::sqrt(g.degree(x) * g.degree(nb.vertex));
      },
      1.0);
}

}  // namespace graphcalc
