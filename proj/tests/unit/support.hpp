#pragma once

#include <Eigen/Dense>

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vhs/algebra.hpp"
#include "vhs/geometry.hpp"

namespace vhs {

inline void PrintTo(const AlgebraSpec& spec, std::ostream* os) { *os << spec.name(); }

}  // namespace vhs

namespace vhs::testing {

inline std::vector<AlgebraSpec> six_algebras() {
  return {AlgebraSpec::so(1, 2), AlgebraSpec::so(2, 2), AlgebraSpec::so(3, 2),
          AlgebraSpec::sp(1, 1), AlgebraSpec::sp(1, 2), AlgebraSpec::sp(2, 2)};
}

/// Constructions are deterministic, so they are built once per process.
inline const Construction& built(const AlgebraSpec& spec) {
  static std::map<std::string, Construction> cache;
  auto it = cache.find(spec.name());
  if (it == cache.end()) it = cache.emplace(spec.name(), construct(spec)).first;
  return it->second;
}

inline const CurvatureModel& base_model(const AlgebraSpec& spec, double scale = 1.0) {
  static std::map<std::pair<std::string, double>, CurvatureModel> cache;
  const auto key = std::make_pair(spec.name(), scale);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto& st = built(spec).structure;
    it = cache.emplace(key, curvature_model(symmetric_base(st, scale), st)).first;
  }
  return it->second;
}

/// Coordinates of a matrix over a list of matrices, by SVD least squares on
/// the flattened entries (independent of the Gram-matrix solve in the core).
inline Eigen::VectorXd coordinates(const std::vector<Eigen::MatrixXd>& basis,
                                   const Eigen::MatrixXd& x) {
  const Eigen::Index entries = x.size();
  Eigen::MatrixXd a(entries, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = basis[j].reshaped();
  }
  return a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(x.reshaped().eval());
}

inline Eigen::MatrixXd bracket(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return x * y - y * x;
}

inline std::string spec_name(const ::testing::TestParamInfo<AlgebraSpec>& info) {
  std::string out;
  for (char ch : info.param.name()) {
    if (std::isalnum(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

}  // namespace vhs::testing
