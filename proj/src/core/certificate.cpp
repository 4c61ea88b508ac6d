#include "certificate.hpp"

#include <algorithm>
#include <cmath>

namespace graphcalc {

namespace {

double minimum(const std::vector<SlackEntry>& slack) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : slack) m = std::min(m, e.slack);
  return m;
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json slack_object(const std::vector<SlackEntry>& slack) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& e : slack) out[e.label] = number_or_null(e.slack);
  return out;
}

}  // namespace

CertificateReport CertificateReport::make(std::string check, double tol, std::vector<SlackEntry> slack) {
  CertificateReport r;
  r.check = std::move(check);
  r.tol = tol;
  r.slack = std::move(slack);
  r.min_slack = minimum(r.slack);
  // NaN slack fails
  r.pass = !std::isnan(r.min_slack) && r.min_slack >= -tol;
  for (const auto& e : r.slack)
    if (std::isnan(e.slack)) r.pass = false;
  return r;
}

std::optional<double> CertificateReport::slack_at(const std::string& label) const {
  for (const auto& e : slack)
    if (e.label == label) return e.slack;
  return std::nullopt;
}

InformationalSlack make_informational(std::string name, std::vector<SlackEntry> slack) {
  InformationalSlack info{std::move(name), std::move(slack)};
  info.min_slack = minimum(info.slack);
  return info;
}

nlohmann::json to_json(const CertificateReport& report) {
  nlohmann::json out{
      {"check", report.check},
      {"tol", report.tol},
      {"pass", report.pass},
      {"min_slack", number_or_null(report.min_slack)},
      {"slack", slack_object(report.slack)},
  };
  if (report.info) {
    out["info"] = {
        {"name", report.info->name},
        {"min_slack", number_or_null(report.info->min_slack)},
        {"slack", slack_object(report.info->slack)},
    };
  }
  return out;
}

}  // namespace graphcalc
