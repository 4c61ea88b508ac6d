#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"
#include "random.hpp"

namespace graphcalc {

using Complex = std::complex<double>;

enum class ScalarKind { Real, Complex };

/// Total map from the vertices of a graph (by canonical index) to real or
/// complex scalars. Values are always finite.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::vector<double> values);
  explicit VertexFunction(std::vector<Complex> values);

  static VertexFunction constant(std::size_t n, double value) {
    return VertexFunction(std::vector<double>(n, value));
  }
  static VertexFunction constant(std::size_t n, Complex value) {
    return VertexFunction(std::vector<Complex>(n, value));
  }

  ScalarKind kind() const noexcept {
    return std::holds_alternative<std::vector<double>>(values_) ? ScalarKind::Real : ScalarKind::Complex;
  }
  bool is_complex() const noexcept { return kind() == ScalarKind::Complex; }
  std::size_t size() const noexcept;

  /// Throws ComplexNotAllowed on complex functions.
  std::span<const double> real() const&;
  std::span<const double> real() const&& = delete;
  /// Throws BadParams on real functions; use as_complex() to promote.
  std::span<const Complex> complex() const&;
  std::span<const Complex> complex() const&& = delete;
  std::vector<Complex> as_complex() const;

  /// Modulus at a vertex for either kind.
  double abs(VertexIndex v) const;

  template <class Visitor>
  decltype(auto) visit(Visitor&& visitor) const {
    return std::visit([&](const auto& values) { return visitor(std::span(values)); }, values_);
  }

 private:
  std::variant<std::vector<double>, std::vector<Complex>> values_;
};

/// Throws DomainMismatch unless u is defined on exactly the vertices of g.
void require_domain(const WeightedGraph& g, const VertexFunction& u);

/// Per-vertex i.i.d. draws: uniform on [lo, hi] for real functions, uniform on
/// the disk of radius `radius` for complex ones. Each vertex is additionally
/// zeroed with probability zero_probability.
struct RandomFunctionSpec {
  ScalarKind kind = ScalarKind::Real;
  double lo = -1.0;
  double hi = 1.0;
  double radius = 1.0;
  double zero_probability = 0.0;
};

VertexFunction random_function(std::size_t n, const RandomFunctionSpec& spec, Rng& rng);

/// JSON object vertex -> number (real) or vertex -> [re, im] (complex).
nlohmann::json to_json(const WeightedGraph& g, const VertexFunction& u);
/// Every graph vertex must appear and nothing else. A function is complex if
/// any value is an array; plain numbers are then promoted.
VertexFunction function_from_json(const WeightedGraph& g, const nlohmann::json& j);

}  // namespace graphcalc
