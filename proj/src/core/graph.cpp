#include "graph.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "errors.hpp"
#include "format.hpp"
#include "random.hpp"

namespace graphcalc {

namespace {

std::string describe(const EdgeRecord& r, std::size_t index) {
  std::ostringstream out;
  out << "record " << index << " (" << r.x << ", " << r.y << ", " << format_g17(r.weight) << ")";
  return out.str();
}

}  // namespace

WeightedGraph WeightedGraph::build(std::span<const EdgeRecord> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyGraph, "no edges given");

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::string> names;
  names.reserve(2 * records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.x.empty() || r.y.empty()) throw Error(ErrorCode::BadParams, describe(r, i) + " has an empty vertex id");
    if (r.x == r.y) throw Error(ErrorCode::SelfLoop, describe(r, i));
    if (!(r.weight > 0.0) || !std::isfinite(r.weight)) throw Error(ErrorCode::NonPositiveWeight, describe(r, i));
    auto key = std::minmax(r.x, r.y);
    if (!seen.emplace(key.first, key.second).second) throw Error(ErrorCode::DuplicateEdge, describe(r, i));
    names.push_back(r.x);
    names.push_back(r.y);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  WeightedGraph g;
  g.names_ = std::move(names);
  const std::size_t n = g.names_.size();

  std::vector<std::vector<Neighbor>> lists(n);
  g.edges_.reserve(records.size());
  for (const auto& r : records) {
    VertexIndex a = g.index_of(r.x);
    VertexIndex b = g.index_of(r.y);
    if (a > b) std::swap(a, b);
    g.edges_.push_back({a, b, r.weight});
    lists[a].push_back({b, r.weight});
    lists[b].push_back({a, r.weight});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& l, const Edge& r) {
    return std::tie(l.first, l.second) < std::tie(r.first, r.second);
  });

  g.offsets_.assign(n + 1, 0);
  g.degrees_.assign(n, 0.0);
  for (VertexIndex v = 0; v < n; ++v) {
    auto& list = lists[v];
    std::sort(list.begin(), list.end(), [](const Neighbor& l, const Neighbor& r) { return l.vertex < r.vertex; });
    double d = 0.0;
    for (const auto& nb : list) d += nb.weight;
    g.degrees_[v] = d;
    g.offsets_[v + 1] = g.offsets_[v] + list.size();
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
  }
  for (double d : g.degrees_) {
    if (!std::isfinite(d)) throw Error(ErrorCode::NonPositiveWeight, "vertex degree overflows");
    g.volume_ += d;
  }

  std::vector<bool> reached(n, false);
  std::vector<VertexIndex> frontier{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    VertexIndex v = frontier.back();
    frontier.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (!reached[nb.vertex]) {
        reached[nb.vertex] = true;
        ++count;
        frontier.push_back(nb.vertex);
      }
    }
  }
  if (count != n) {
    auto it = std::find(reached.begin(), reached.end(), false);
    throw Error(ErrorCode::Disconnected, "vertex '" + g.names_[static_cast<std::size_t>(it - reached.begin())] +
                                             "' is not reachable from '" + g.names_[0] + "'");
  }
  return g;
}

std::optional<VertexIndex> WeightedGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexIndex>(it - names_.begin());
}

VertexIndex WeightedGraph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorCode::DomainMismatch, "unknown vertex '" + std::string(name) + "'");
}

double d_constant(const WeightedGraph& g) {
  double d = 0.0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    for (const auto& nb : g.neighbors(v)) d = std::max(d, g.degree(v) / nb.weight);
  return d;
}

std::optional<GraphFamily> parse_family(std::string_view name) {
  if (name == "path") return GraphFamily::Path;
  if (name == "cycle") return GraphFamily::Cycle;
  if (name == "complete") return GraphFamily::Complete;
  if (name == "star") return GraphFamily::Star;
  if (name == "grid2d" || name == "grid") return GraphFamily::Grid2d;
  if (name == "gnp") return GraphFamily::Gnp;
  return std::nullopt;
}

const char* to_string(GraphFamily family) noexcept {
  switch (family) {
    case GraphFamily::Path: return "path";
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Complete: return "complete";
    case GraphFamily::Star: return "star";
    case GraphFamily::Grid2d: return "grid2d";
    case GraphFamily::Gnp: return "gnp";
  }
  return "unknown";
}

namespace {

// Zero-padded so lexicographic order matches numeric order.
std::string padded(const char* prefix, std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  return prefix + std::string(width - digits.size(), '0') + digits;
}

class EdgeSink {
 public:
  EdgeSink(const GenerateParams& params, Rng& rng) : params_(params), rng_(rng) {}

  void add(std::string x, std::string y) {
    double w = params_.weight;
    if (params_.random_weights) w = rng_.uniform(params_.random_weights->lo, params_.random_weights->hi);
    records.push_back({std::move(x), std::move(y), w});
  }

  std::vector<EdgeRecord> records;

 private:
  const GenerateParams& params_;
  Rng& rng_;
};

bool connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (auto [a, b] : edges) {
    auto ra = root(a), rb = root(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

WeightedGraph generate(GraphFamily family, const GenerateParams& params) {
  if (params.random_weights) {
    const auto& r = *params.random_weights;
    if (!(r.lo > 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi))
      throw Error(ErrorCode::BadParams, "random weight range must satisfy 0 < lo <= hi");
  } else if (!(params.weight > 0.0) || !std::isfinite(params.weight)) {
    throw Error(ErrorCode::BadParams, "weight must be positive and finite");
  }

  Rng rng(params.seed);
  EdgeSink sink(params, rng);
  const std::size_t n = params.n;
  auto v = [n](std::size_t i) { return padded("v", i, n); };
  auto need_n = [n](std::size_t minimum, const char* what) {
    if (n < minimum) throw Error(ErrorCode::BadParams, std::string(what) + " needs n >= " + std::to_string(minimum));
  };

  switch (family) {
    case GraphFamily::Path:
      need_n(2, "path");
      for (std::size_t i = 0; i + 1 < n; ++i) sink.add(v(i), v(i + 1));
      break;
    case GraphFamily::Cycle:
      need_n(3, "cycle");
      for (std::size_t i = 0; i < n; ++i) sink.add(v(i), v((i + 1) % n));
      break;
    case GraphFamily::Complete:
      need_n(2, "complete");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sink.add(v(i), v(j));
      break;
    case GraphFamily::Star:
      need_n(2, "star");
      for (std::size_t i = 1; i < n; ++i) sink.add(v(0), v(i));
      break;
    case GraphFamily::Grid2d: {
      const std::size_t rows = params.rows, cols = params.cols;
      if (rows < 2 || cols < 2) throw Error(ErrorCode::BadParams, "grid2d needs rows >= 2 and cols >= 2");
      auto cell = [&](std::size_t r, std::size_t c) { return padded("r", r, rows) + padded("c", c, cols); };
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          if (c + 1 < cols) sink.add(cell(r, c), cell(r, c + 1));
          if (r + 1 < rows) sink.add(cell(r, c), cell(r + 1, c));
        }
      break;
    }
    case GraphFamily::Gnp: {
      need_n(2, "gnp");
      if (!(params.p > 0.0 && params.p <= 1.0)) throw Error(ErrorCode::BadParams, "gnp needs 0 < p <= 1");
      for (int draw = 0; draw < kGnpMaxDraws; ++draw) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(params.p)) pairs.emplace_back(i, j);
        if (!connected(n, pairs)) continue;
        for (auto [i, j] : pairs) sink.add(v(i), v(j));
        return WeightedGraph::build(sink.records);
      }
      throw Error(ErrorCode::DisconnectedDraw,
                  "no connected draw in " + std::to_string(kGnpMaxDraws) + " attempts");
    }
  }
  return WeightedGraph::build(sink.records);
}

WeightedGraph parse_edge_list(std::string_view text) {
  std::vector<EdgeRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream in(line);
    std::string x, y, w, extra;
    if (!(in >> x >> y >> w) || (in >> extra))
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected `<x> <y> <mu>`");
    errno = 0;
    char* stop = nullptr;
    double weight = std::strtod(w.c_str(), &stop);
    if (stop != w.c_str() + w.size() || errno == ERANGE)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad weight '" + w + "'");
    records.push_back({std::move(x), std::move(y), weight});
  }
  return WeightedGraph::build(records);
}

WeightedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

std::string to_edge_list(const WeightedGraph& g) {
  std::string out = "# " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges\n";
  for (const auto& e : g.edges()) {
    out += g.name(e.first);
    out += ' ';
    out += g.name(e.second);
    out += ' ';
    out += format_g17(e.weight);
    out += '\n';
  }
  return out;
}

}  // namespace graphcalc
