#pragma once

#include <map>
#include <string>
#include <vector>

#include "graph.hpp"
#include "oracles.hpp"
#include "random.hpp"
#include "vertex_function.hpp"

namespace fixtures {

inline graphcalc::WeightedGraph from_oracle(const std::vector<oracle::Edge>& edges) {
  std::vector<graphcalc::EdgeRecord> records;
  for (const auto& e : edges) records.push_back({e.x, e.y, e.mu});
  return graphcalc::WeightedGraph::build(records);
}

inline graphcalc::VertexFunction real_function(const graphcalc::WeightedGraph& g, const oracle::Values& values) {
  std::vector<double> out(g.vertex_count());
  for (const auto& [name, value] : values) out[g.index_of(name)] = value;
  return graphcalc::VertexFunction(std::move(out));
}

inline oracle::Values to_values(const graphcalc::WeightedGraph& g, const graphcalc::VertexFunction& u) {
  oracle::Values out;
  const auto values = u.real();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out[g.name(v)] = values[v];
  return out;
}

inline std::vector<oracle::Edge> oracle_edges(const graphcalc::WeightedGraph& g) {
  std::vector<oracle::Edge> out;
  for (const auto& e : g.edges()) out.push_back({g.name(e.first), g.name(e.second), e.weight});
  return out;
}

inline const std::vector<oracle::Edge> kP2{{"a", "b", 1.0}};
inline const std::vector<oracle::Edge> kP3{{"a", "b", 1.0}, {"b", "c", 1.0}};
inline const std::vector<oracle::Edge> kK3{{"a", "b", 1.0}, {"b", "c", 1.0}, {"a", "c", 1.0}};

/// One graph per generator family, sized for desk-scale property runs.
/// Weights are random in [0.2, 3] unless `unit` is set.
inline std::vector<graphcalc::WeightedGraph> family_corpus(std::uint64_t seed, bool unit = false) {
  using graphcalc::GraphFamily;
  std::vector<graphcalc::WeightedGraph> out;
  auto params = [&](std::size_t n) {
    graphcalc::GenerateParams p;
    p.n = n;
    p.seed = seed;
    if (!unit) p.random_weights = graphcalc::WeightRange{0.2, 3.0};
    return p;
  };
  out.push_back(graphcalc::generate(GraphFamily::Path, params(7)));
  out.push_back(graphcalc::generate(GraphFamily::Cycle, params(8)));
  out.push_back(graphcalc::generate(GraphFamily::Complete, params(6)));
  out.push_back(graphcalc::generate(GraphFamily::Star, params(6)));
  auto grid = params(0);
  grid.rows = 3;
  grid.cols = 4;
  out.push_back(graphcalc::generate(GraphFamily::Grid2d, grid));
  auto gnp = params(12);
  gnp.p = 0.35;
  out.push_back(graphcalc::generate(GraphFamily::Gnp, gnp));
  return out;
}

}  // namespace fixtures
