#include "vhs/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "vhs/errors.hpp"

namespace vhs {

using nlohmann::json;

namespace {

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

VerificationReport::VerificationReport(AlgebraSpec spec, Eigen::VectorXd xi, std::uint64_t seed)
    : spec_(spec), xi_(std::move(xi)), seed_(seed) {}

void VerificationReport::below(const std::string& section, const std::string& name,
                               const std::string& anchor, double value, double tolerance) {
  records_.push_back({section, name, anchor, value, tolerance, "<", value < tolerance});
}

void VerificationReport::above(const std::string& section, const std::string& name,
                               const std::string& anchor, double value, double bound) {
  records_.push_back({section, name, anchor, value, bound, ">", value > bound});
}

void VerificationReport::at_least(const std::string& section, const std::string& name,
                                  const std::string& anchor, double value, double bound) {
  records_.push_back({section, name, anchor, value, bound, ">=", value >= bound});
}

void VerificationReport::flag(const std::string& section, const std::string& name,
                              const std::string& anchor, bool holds) {
  records_.push_back({section, name, anchor, holds ? 1.0 : 0.0, 1.0, "==", holds});
}

void VerificationReport::set_section(const std::string& section, json payload) {
  sections_[section] = std::move(payload);
}

void VerificationReport::add_assumption(const std::string& text) {
  if (std::find(assumptions_.begin(), assumptions_.end(), text) == assumptions_.end()) {
    assumptions_.push_back(text);
  }
}

void VerificationReport::add_timing(const std::string& section, double seconds) {
  timings_.push_back({section, seconds});
}

bool VerificationReport::overall_pass() const {
  return !records_.empty() &&
         std::all_of(records_.begin(), records_.end(), [](const auto& r) { return r.pass; });
}

const CheckRecord& VerificationReport::record(const std::string& section,
                                              const std::string& name) const {
  for (const auto& r : records_) {
    if (r.section == section && r.name == name) return r;
  }
  throw std::out_of_range("no record " + section + "/" + name);
}

json VerificationReport::to_json() const {
  json doc;
  doc["schema"] = kReportSchema;
  doc["toolkit_version"] = VHS_VERSION;
  doc["algebra"] = spec_to_json(spec_);
  doc["xi"] = vector_json(xi_);
  doc["seed"] = seed_;
  json checks = json::array();
  for (const auto& r : records_) {
    checks.push_back({{"section", r.section},
                      {"name", r.name},
                      {"anchor", r.anchor},
                      {"value", r.value},
                      {"tolerance", r.tolerance},
                      {"relation", r.relation},
                      {"pass", r.pass}});
  }
  doc["checks"] = std::move(checks);
  doc["assumptions"] = assumptions_;
  doc["sections"] = sections_;
  doc["overall_pass"] = overall_pass();
  return doc;
}

std::string VerificationReport::dump() const { return to_json().dump(2); }

json spec_to_json(const AlgebraSpec& spec) {
  json out;
  out["family"] = spec.family == Family::SO ? "so" : "sp";
  if (spec.family == Family::SO) {
    out["p"] = spec.param1;
    out["q"] = spec.param2;
  } else {
    out["m"] = spec.param1;
    out["n"] = spec.param2;
  }
  out["name"] = spec.name();
  out["space"] = spec.space_label();
  out["dimension"] = spec.dimension();
  return out;
}

json algebra_to_json(const Construction& c) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["algebra"] = spec_to_json(c.spec);
  doc["xi_coefficients"] = vector_json(c.xi_coefficients);
  const auto& lay = c.canonical.layout;
  doc["index_ranges"] = {{"n", lay.n},
                         {"r", lay.r},
                         {"r1", c.canonical.r1},
                         {"r2", c.canonical.r2},
                         {"n1", lay.n1()},
                         {"m", {0, lay.n}},
                         {"fiber", {lay.n, lay.n1()}},
                         {"v", {lay.n1(), lay.dim()}}};
  doc["residuals"] = {{"closure", c.basis.closure_residual},
                      {"defining_condition", c.basis.condition_residual},
                      {"min_singular_value", c.basis.min_singular_value},
                      {"killing_gram", c.canonical.gram_residual},
                      {"expansion", c.structure.expansion_residual},
                      {"forbidden_blocks", forbidden_block_residual(c.structure)},
                      {"theta_invariance", theta_invariance_residual(c.split)}};
  doc["matrix_size"] = c.spec.matrix_size();
  json basis = json::array();
  for (const auto& x : c.canonical.X) basis.push_back(matrix_json(x));
  doc["canonical_basis"] = std::move(basis);
  doc["basis_hash"] = basis_hash(c.canonical);
  return doc;
}

std::vector<Eigen::MatrixXd> basis_from_json(const json& doc) {
  const int size = doc.at("matrix_size").get<int>();
  std::vector<Eigen::MatrixXd> out;
  for (const auto& flat : doc.at("canonical_basis")) {
    if (static_cast<int>(flat.size()) != size * size) {
      throw InvalidInput("basis_from_json: matrix has the wrong number of entries");
    }
    Eigen::MatrixXd m(size, size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) m(i, j) = flat.at(i * size + j).get<double>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

json curvature_to_json(const CurvatureReport& report) {
  return {{"dim", report.dim},
          {"min_k", report.min_k},
          {"max_k", report.max_k},
          {"sample_count", report.sample_count},
          {"sample_min", report.sample_min},
          {"sample_max", report.sample_max},
          {"sample_mean", report.sample_mean},
          {"sample_stddev", report.sample_stddev},
          {"restarts", report.restarts},
          {"converged_min", report.converged_min},
          {"converged_max", report.converged_max},
          {"ricci_eigenvalues", vector_json(report.ricci.eigenvalues)},
          {"rho", report.ricci.rho},
          {"einstein_residual", report.ricci.einstein_residual},
          {"flat_residual", report.flat_residual},
          {"flat_k", report.flat_k},
          {"min_plane", {vector_json(report.min_plane.x), vector_json(report.min_plane.y)}},
          {"max_plane", {vector_json(report.max_plane.x), vector_json(report.max_plane.y)}}};
}

json table_fit_to_json(const TableFit& fit) {
  return {{"type", fit.row.type},
          {"table_k_lower", fit.row.k_lower},
          {"table_k_upper", fit.row.k_upper},
          {"table_ricci", fit.row.ricci},
          {"constant_curvature", fit.row.constant_curvature},
          {"scale", fit.scale},
          {"fitted_min_k", fit.fitted_min_k},
          {"fitted_max_k", fit.fitted_max_k},
          {"fitted_ricci", fit.fitted_ricci},
          {"fitted_sample_stddev", fit.fitted_sample_stddev},
          {"ricci_rel_error", fit.ricci_rel_error},
          {"ratio", fit.ratio},
          {"expected_ratio", fit.expected_ratio},
          {"ratio_rel_error", fit.ratio_rel_error},
          {"upper_rel_error", fit.upper_rel_error},
          {"pass", fit.pass}};
}

std::string table_csv_header() {
  return "Type,Sec. Curvature,Ricci Curvature,fitted_min_k,fitted_max_k,fitted_ricci,scale,"
         "ratio,expected_ratio,pass\n";
}

std::string table_csv_row(const TableFit& fit, const CurvatureReport& report) {
  (void)report;
  std::ostringstream os;
  std::ostringstream range;
  if (fit.row.constant_curvature) {
    range << "K = " << fit.row.k_lower;
  } else {
    range << fit.row.k_lower << " <= K <= " << fit.row.k_upper;
  }
  os << quoted(fit.row.type) << ',' << quoted(range.str()) << ',' << fit.row.ricci << ','
     << csv_number(fit.fitted_min_k) << ',' << csv_number(fit.fitted_max_k) << ','
     << csv_number(fit.fitted_ricci) << ',' << csv_number(fit.scale) << ','
     << csv_number(fit.ratio) << ',' << csv_number(fit.expected_ratio) << ','
     << (fit.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string profile_csv(const RadialProfile& profile) {
  std::ostringstream os;
  const int t = profile.tangential();
  os << "r";
  for (int i = 1; i <= t; ++i) os << ",lambda_" << i;
  os << ",laplacian_r";
  for (int i = 1; i <= t; ++i) os << ",A_" << i;
  os << '\n';
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    os << csv_number(profile.r[i]);
    for (int j = 0; j < t; ++j) os << ',' << csv_number(profile.lambda(row, j));
    os << ',' << csv_number(profile.laplacian(row));
    for (int j = 0; j < t; ++j) os << ',' << csv_number(profile.a_s(row, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace vhs
