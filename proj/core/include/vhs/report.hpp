#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "vhs/algebra.hpp"
#include "vhs/geometry.hpp"
#include "vhs/radial.hpp"

namespace vhs {

inline constexpr int kReportSchema = 1;

struct CheckRecord {
  std::string section;
  std::string name;
  /// Short statement of the identity or bound being checked.
  std::string anchor;
  double value = 0.0;
  double tolerance = 0.0;
  /// "<" (value < tolerance), ">" (value > tolerance), ">=" (value >= tolerance),
  /// "==" (flag).
  std::string relation;
  bool pass = false;
};

struct SectionTiming {
  std::string section;
  double seconds = 0.0;
};

/// Machine-readable record of every check. Timings are kept out of the JSON
/// document so that reports are byte-identical for identical inputs.
class VerificationReport {
 public:
  VerificationReport(AlgebraSpec spec, Eigen::VectorXd xi, std::uint64_t seed);

  void below(const std::string& section, const std::string& name, const std::string& anchor,
             double value, double tolerance);
  void above(const std::string& section, const std::string& name, const std::string& anchor,
             double value, double bound);
  void at_least(const std::string& section, const std::string& name, const std::string& anchor,
                double value, double bound);
  void flag(const std::string& section, const std::string& name, const std::string& anchor,
            bool holds);

  void set_section(const std::string& section, nlohmann::json payload);
  void add_assumption(const std::string& text);
  void add_timing(const std::string& section, double seconds);

  bool overall_pass() const;
  const std::vector<CheckRecord>& records() const { return records_; }
  const std::vector<SectionTiming>& timings() const { return timings_; }
  const nlohmann::json& sections() const { return sections_; }
  const AlgebraSpec& spec() const { return spec_; }
  /// Throws std::out_of_range for an unknown record.
  const CheckRecord& record(const std::string& section, const std::string& name) const;

  nlohmann::json to_json() const;
  std::string dump() const;

 private:
  AlgebraSpec spec_;
  Eigen::VectorXd xi_;
  std::uint64_t seed_;
  std::vector<CheckRecord> records_;
  nlohmann::json sections_ = nlohmann::json::object();
  std::vector<std::string> assumptions_;
  std::vector<SectionTiming> timings_;
};

nlohmann::json spec_to_json(const AlgebraSpec& spec);

/// Basis matrices (row-major), index ranges and residuals. Doubles are
/// written in shortest round-trip form, so parsing recovers them exactly.
nlohmann::json algebra_to_json(const Construction& c);

/// Inverse of the matrix part of algebra_to_json.
std::vector<Eigen::MatrixXd> basis_from_json(const nlohmann::json& doc);

nlohmann::json curvature_to_json(const CurvatureReport& report);
nlohmann::json table_fit_to_json(const TableFit& fit);

/// Header line and one row per space, mirroring the curvature table columns
/// followed by the fitted values.
std::string table_csv_header();
std::string table_csv_row(const TableFit& fit, const CurvatureReport& report);

/// Columns r, lambda_1..lambda_{n-1}, laplacian_r, A_1..A_{n-1}.
std::string profile_csv(const RadialProfile& profile);

}  // namespace vhs
