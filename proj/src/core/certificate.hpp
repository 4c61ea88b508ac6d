#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace graphcalc {

/// Absolute slack tolerance used when a caller does not pick one.
inline constexpr double kDefaultTolerance = 1e-10;

/// Slack at one site of a check. Sites are usually vertex ids; trace checks
/// use step labels.
struct SlackEntry {
  std::string label;
  double slack;
};

/// Slack values reported alongside a certificate without affecting `pass`.
struct InformationalSlack {
  std::string name;
  std::vector<SlackEntry> slack;
  double min_slack = std::numeric_limits<double>::infinity();
};

/// Per-site evidence for an inequality or identity. Slack >= 0 means the
/// inequality holds at that site; pass <=> min_slack >= -tol.
struct CertificateReport {
  std::string check;
  double tol = kDefaultTolerance;
  std::vector<SlackEntry> slack;
  double min_slack = std::numeric_limits<double>::infinity();
  bool pass = true;
  std::optional<InformationalSlack> info;

  static CertificateReport make(std::string check, double tol, std::vector<SlackEntry> slack);

  /// Slack at a label, or nullopt when the site was not reported.
  std::optional<double> slack_at(const std::string& label) const;
};

InformationalSlack make_informational(std::string name, std::vector<SlackEntry> slack);

/// {check, tol, pass, min_slack, slack: {label: value}} plus an optional
/// "info" object. An empty report has min_slack null.
nlohmann::json to_json(const CertificateReport& report);

}  // namespace graphcalc
