#pragma once

#include "kostka/stretch.hpp"

#include <json.hpp>

#include <string>

namespace kostka {

inline constexpr int kReportSchemaVersion = 1;

/// Serialized form of a stretch run. Rationals are "p/q" strings, big
/// integers decimal strings, simple-root index sets one-based.
struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  std::string command;
  std::string library_version;
  StretchReport report;
};

std::string library_version();

nlohmann::json to_json(const ReportDocument& doc, bool include_timing = true);
/// Throws std::invalid_argument on schema violations.
ReportDocument report_from_json(const nlohmann::json& j);

/// Compares every serialized field (timing included).
bool same_document(const ReportDocument& a, const ReportDocument& b);

std::string render_table(const StretchReport& rep);

nlohmann::json quasi_polynomial_to_json(const QuasiPolynomial& qp);
QuasiPolynomial quasi_polynomial_from_json(const nlohmann::json& j);

}  // namespace kostka
