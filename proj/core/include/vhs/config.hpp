#pragma once

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vhs/algebra.hpp"

namespace vhs {

/// Everything a verification run depends on. Only `spec`, `xi` and `seed`
/// (plus the sample counts) influence the report contents.
struct RunConfig {
  AlgebraSpec spec = AlgebraSpec::so(2, 2);
  std::optional<Eigen::VectorXd> xi;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;

  int samples = 100000;
  int restarts = 50;
  int directions = 200;
  int random_forms = 1000;
  int random_frames = 1000;
  /// Extra ξ choices for the fibration checks, drawn as random generic torus
  /// elements.
  int random_xi = 3;
  int grid_points = 2000;
  /// How many direction profiles are written as CSV.
  int exported_profiles = 1;
};

/// Accepted keys: family ("so" | "sp"), p/q or m/n, xi, seed, tol_scale,
/// samples, restarts, directions, random_forms, random_frames, random_xi,
/// grid_points, exported_profiles. Unknown keys and malformed values throw
/// InvalidInput.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& config);

/// Parses "so" / "sp" (case-insensitive).
Family parse_family(const std::string& text);

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "VHSVERIFY_OUT_DIR";
std::filesystem::path default_output_dir();

}  // namespace vhs
