#include "vhs/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include "vhs/errors.hpp"

namespace vhs {

using nlohmann::json;

namespace {

int positive_int(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0 || v.get<long long>() > 100000000) {
    throw InvalidInput(std::string("config: '") + key + "' must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

}  // namespace

Family parse_family(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "so") return Family::SO;
  if (lower == "sp") return Family::SP;
  throw InvalidInput("unknown family '" + text + "' (expected so or sp)");
}

RunConfig config_from_json(const json& doc, RunConfig config) {
  if (!doc.is_object()) throw InvalidInput("config: top level must be a JSON object");
  static const std::set<std::string> known = {
      "family",  "p",          "q",          "m",           "n",
      "xi",      "seed",       "tol_scale",  "samples",     "restarts",
      "directions", "random_forms", "random_frames", "random_xi", "grid_points",
      "exported_profiles"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw InvalidInput("config: unknown key '" + key + "'");
  }

  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw InvalidInput("config: 'family' must be a string");
    config.spec.family = parse_family(doc["family"].get<std::string>());
  }
  const bool so = config.spec.family == Family::SO;
  const char* first = so ? "p" : "m";
  const char* second = so ? "q" : "n";
  const char* wrong_first = so ? "m" : "p";
  const char* wrong_second = so ? "n" : "q";
  if (doc.contains(wrong_first) || doc.contains(wrong_second)) {
    throw InvalidInput(std::string("config: family ") + (so ? "so takes p and q" : "sp takes m and n"));
  }
  if (doc.contains(first)) config.spec.param1 = positive_int(doc, first);
  if (doc.contains(second)) config.spec.param2 = positive_int(doc, second);

  if (doc.contains("xi")) {
    const auto& xi = doc["xi"];
    if (!xi.is_array() || xi.empty()) throw InvalidInput("config: 'xi' must be a nonempty array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(xi.size()));
    for (std::size_t i = 0; i < xi.size(); ++i) {
      if (!xi[i].is_number()) throw InvalidInput("config: 'xi' entries must be numbers");
      v(static_cast<Eigen::Index>(i)) = xi[i].get<double>();
    }
    config.xi = v;
  }
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      throw InvalidInput("config: 'seed' must be a nonnegative integer");
    }
    config.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("tol_scale")) {
    const auto& t = doc["tol_scale"];
    if (!t.is_number() || !(t.get<double>() > 0.0)) {
      throw InvalidInput("config: 'tol_scale' must be a positive number");
    }
    config.tol_scale = t.get<double>();
  }
  if (doc.contains("samples")) config.samples = positive_int(doc, "samples");
  if (doc.contains("restarts")) config.restarts = positive_int(doc, "restarts");
  if (doc.contains("directions")) config.directions = positive_int(doc, "directions");
  if (doc.contains("random_forms")) config.random_forms = positive_int(doc, "random_forms");
  if (doc.contains("random_frames")) config.random_frames = positive_int(doc, "random_frames");
  if (doc.contains("random_xi")) {
    const auto& v = doc["random_xi"];
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
      throw InvalidInput("config: 'random_xi' must be a nonnegative integer");
    }
    config.random_xi = static_cast<int>(v.get<long long>());
  }
  if (doc.contains("grid_points")) config.grid_points = positive_int(doc, "grid_points");
  if (doc.contains("exported_profiles")) {
    config.exported_profiles = positive_int(doc, "exported_profiles");
  }
  validate(config.spec);
  return config;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidInput("config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

json config_to_json(const RunConfig& config) {
  json doc;
  const bool so = config.spec.family == Family::SO;
  doc["family"] = so ? "so" : "sp";
  doc[so ? "p" : "m"] = config.spec.param1;
  doc[so ? "q" : "n"] = config.spec.param2;
  if (config.xi) {
    json xi = json::array();
    for (Eigen::Index i = 0; i < config.xi->size(); ++i) xi.push_back((*config.xi)(i));
    doc["xi"] = xi;
  }
  doc["seed"] = config.seed;
  doc["tol_scale"] = config.tol_scale;
  doc["samples"] = config.samples;
  doc["restarts"] = config.restarts;
  doc["directions"] = config.directions;
  doc["random_forms"] = config.random_forms;
  doc["random_frames"] = config.random_frames;
  doc["random_xi"] = config.random_xi;
  doc["grid_points"] = config.grid_points;
  doc["exported_profiles"] = config.exported_profiles;
  return doc;
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return "vhs_out";
}

}  // namespace vhs
