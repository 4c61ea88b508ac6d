#include "vertex_function.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace graphcalc {

namespace {

template <class T>
void require_finite(std::span<const T> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool ok;
    if constexpr (std::is_same_v<T, double>)
      ok = std::isfinite(values[i]);
    else
      ok = std::isfinite(values[i].real()) && std::isfinite(values[i].imag());
    if (!ok) throw Error(ErrorCode::NonFinite, "value at index " + std::to_string(i) + " is not finite");
  }
}

}  // namespace

VertexFunction::VertexFunction(std::vector<double> values) : values_(std::move(values)) {
  require_finite(std::span<const double>(std::get<0>(values_)));
}

VertexFunction::VertexFunction(std::vector<Complex> values) : values_(std::move(values)) {
  require_finite(std::span<const Complex>(std::get<1>(values_)));
}

std::size_t VertexFunction::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

std::span<const double> VertexFunction::real() const& {
  if (const auto* v = std::get_if<std::vector<double>>(&values_)) return *v;
  throw Error(ErrorCode::ComplexNotAllowed, "operation requires a real-valued function");
}

std::span<const Complex> VertexFunction::complex() const& {
  if (const auto* v = std::get_if<std::vector<Complex>>(&values_)) return *v;
  throw Error(ErrorCode::BadParams, "operation requires a complex-valued function");
}

std::vector<Complex> VertexFunction::as_complex() const {
  if (const auto* v = std::get_if<std::vector<Complex>>(&values_)) return *v;
  const auto& r = std::get<std::vector<double>>(values_);
  return {r.begin(), r.end()};
}

double VertexFunction::abs(VertexIndex v) const {
  return std::visit([v](const auto& values) { return std::abs(values.at(v)); }, values_);
}

void require_domain(const WeightedGraph& g, const VertexFunction& u) {
  if (u.size() != g.vertex_count())
    throw Error(ErrorCode::DomainMismatch, "function has " + std::to_string(u.size()) + " values, graph has " +
                                               std::to_string(g.vertex_count()) + " vertices");
}

VertexFunction random_function(std::size_t n, const RandomFunctionSpec& spec, Rng& rng) {
  if (spec.kind == ScalarKind::Real) {
    std::vector<double> values(n);
    for (auto& x : values) {
      x = rng.uniform(spec.lo, spec.hi);
      if (spec.zero_probability > 0.0 && rng.bernoulli(spec.zero_probability)) x = 0.0;
    }
    return VertexFunction(std::move(values));
  }
  std::vector<Complex> values(n);
  for (auto& z : values) {
    double re, im;
    do {
      re = rng.uniform(-1.0, 1.0);
      im = rng.uniform(-1.0, 1.0);
    } while (re * re + im * im > 1.0);
    z = spec.radius * Complex(re, im);
    if (spec.zero_probability > 0.0 && rng.bernoulli(spec.zero_probability)) z = 0.0;
  }
  return VertexFunction(std::move(values));
}

nlohmann::json to_json(const WeightedGraph& g, const VertexFunction& u) {
  require_domain(g, u);
  nlohmann::json out = nlohmann::json::object();
  u.visit([&](auto values) {
    for (std::size_t v = 0; v < values.size(); ++v) {
      if constexpr (std::is_same_v<typename decltype(values)::value_type, double>)
        out[g.name(v)] = values[v];
      else
        out[g.name(v)] = nlohmann::json::array({values[v].real(), values[v].imag()});
    }
  });
  return out;
}

VertexFunction function_from_json(const WeightedGraph& g, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "vertex function must be a JSON object");
  const std::size_t n = g.vertex_count();
  std::vector<Complex> values(n);
  std::vector<bool> present(n, false);
  bool any_complex = false;
  for (const auto& [key, value] : j.items()) {
    auto v = g.find(key);
    if (!v) throw Error(ErrorCode::DomainMismatch, "vertex '" + key + "' is not in the graph");
    if (value.is_number()) {
      values[*v] = value.get<double>();
    } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
      values[*v] = Complex(value[0].get<double>(), value[1].get<double>());
      any_complex = true;
    } else {
      throw Error(ErrorCode::Parse, "value for vertex '" + key + "' must be a number or [re, im]");
    }
    present[*v] = true;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!present[v]) throw Error(ErrorCode::DomainMismatch, "vertex '" + g.name(v) + "' has no value");
  if (any_complex) return VertexFunction(std::move(values));
  std::vector<double> reals(n);
  for (std::size_t v = 0; v < n; ++v) reals[v] = values[v].real();
  return VertexFunction(std::move(reals));
}

}  // namespace graphcalc
