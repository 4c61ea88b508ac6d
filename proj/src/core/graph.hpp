#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphcalc {

using VertexIndex = std::size_t;

/// One line of an edge list: an unordered pair with its weight.
struct EdgeRecord {
  std::string x;
  std::string y;
  double weight = 1.0;
};

struct Neighbor {
  VertexIndex vertex;
  double weight;
};

/// Stored with first < second in the canonical vertex order.
struct Edge {
  VertexIndex first;
  VertexIndex second;
  double weight;
};

/// Finite, simple, connected graph with symmetric positive edge weights.
///
/// Vertices are indexed by their position in lexicographic order of the
/// identifiers, so every loop over vertices or neighbors runs in the same
/// canonical order. Instances are immutable once built.
class WeightedGraph {
 public:
  /// Validates the records and builds the graph. Throws Error with SelfLoop,
  /// DuplicateEdge, NonPositiveWeight, Disconnected or EmptyGraph.
  static WeightedGraph build(std::span<const EdgeRecord> records);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const std::string> vertices() const noexcept { return names_; }
  const std::string& name(VertexIndex v) const { return names_.at(v); }
  std::optional<VertexIndex> find(std::string_view name) const;
  /// Throws DomainMismatch for unknown identifiers.
  VertexIndex index_of(std::string_view name) const;

  std::span<const Neighbor> neighbors(VertexIndex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  double degree(VertexIndex v) const noexcept { return degrees_[v]; }
  std::span<const double> degrees() const noexcept { return degrees_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Sum of all degrees.
  double volume() const noexcept { return volume_; }

 private:
  WeightedGraph() = default;

  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> degrees_;
  std::vector<Edge> edges_;
  double volume_ = 0.0;
};

/// sup over vertices x and incident edges (x, y) of d_x / mu_xy. Always >= 1.
double d_constant(const WeightedGraph& g);

enum class GraphFamily { Path, Cycle, Complete, Star, Grid2d, Gnp };

std::optional<GraphFamily> parse_family(std::string_view name);
const char* to_string(GraphFamily family) noexcept;

struct WeightRange {
  double lo;
  double hi;
};

struct GenerateParams {
  /// Vertex count for path, cycle, complete, star (center plus n - 1 leaves) and gnp.
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Edge probability for gnp.
  double p = 0.5;
  double weight = 1.0;
  std::uint64_t seed = 0;
  /// When set, each edge weight is drawn uniformly from the range instead.
  std::optional<WeightRange> random_weights;
};

inline constexpr int kGnpMaxDraws = 100;

/// Deterministic for fixed parameters. Throws BadParams or DisconnectedDraw.
WeightedGraph generate(GraphFamily family, const GenerateParams& params);

/// Edge-list text: `<x> <y> <mu>` per line, `#` comments.
WeightedGraph parse_edge_list(std::string_view text);
WeightedGraph load_edge_list(const std::filesystem::path& path);
std::string to_edge_list(const WeightedGraph& g);

}  // namespace graphcalc
