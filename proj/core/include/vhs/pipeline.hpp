#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vhs/config.hpp"
#include "vhs/report.hpp"

namespace vhs {

enum class Stage { Algebra, Identities, Curvature, Fibration, Harmonic, Comparison, Coercivity };

const char* stage_name(Stage stage);
/// "verify" maps to every stage in pipeline order. Throws InvalidInput for
/// an unknown subcommand.
std::vector<Stage> stages_for(const std::string& subcommand);
/// Stages that need the curvature table (SO with q >= 2, or SP).
bool needs_table(Stage stage);

struct RunArtifacts {
  VerificationReport report;
  /// Set when the curvature stage ran.
  std::string table_csv;
  /// (file stem, CSV text) per exported direction.
  std::vector<std::pair<std::string, std::string>> profiles;
  /// Set when the algebra stage ran.
  nlohmann::json algebra_document;
  /// Human-readable summary including timings and the growth chain.
  std::string summary;

  int exit_code() const { return report.overall_pass() ? 0 : 1; }
};

/// Runs the requested stages in pipeline order. Prerequisites of a stage
/// are computed as needed but only the requested stages record checks.
/// Configuration problems (bad spec, degenerate ξ, table not applicable)
/// throw InvalidInput before any check is recorded; numerical failures
/// inside a stage are recorded as failing checks and the run continues
/// where possible.
RunArtifacts run_verification(const RunConfig& config, const std::vector<Stage>& stages);

/// All stages.
RunArtifacts run_full_verification(const RunConfig& config);

/// Writes report.json, and when present algebra.json, table1.csv and
/// profiles/<direction>.csv, plus timings.json (kept apart from the report
/// so the report stays byte-identical across runs).
void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& out_dir);

}  // namespace vhs
