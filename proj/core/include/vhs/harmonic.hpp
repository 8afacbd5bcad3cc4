#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "vhs/algebra.hpp"

namespace vhs {

/// Components of a 1-form on G/V at a point in the orthonormal coframe:
/// `horizontal` along m, `fiber` along k minus v.
struct FormCoefficients {
  Eigen::VectorXd horizontal;
  Eigen::VectorXd fiber;

  double norm_squared() const { return horizontal.squaredNorm() + fiber.squaredNorm(); }
  Eigen::VectorXd stacked() const;
};

/// Constant-coefficient solutions of the closedness condition
/// c_{i1 i2}^{j1} u_{j1} = 0 for all i1 < i2 (the co-closed condition is
/// automatic for constants).
struct InvariantHarmonicSpace {
  /// Rows indexed by pairs i1 < i2 of G/V directions, columns by j1.
  Eigen::MatrixXd constraint;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd basis;  // columns span the solution space
  int dimension = 0;
  double min_singular_value = 0.0;
};

InvariantHarmonicSpace invariant_harmonic_space(const StructureTensor& st);

/// Image of u under the constraint map; linear in u.
Eigen::VectorXd harmonic_constraint(const InvariantHarmonicSpace& space, const Eigen::VectorXd& u);

/// |sum_{i,j} c_{j s i} u_i u_j| over horizontal i, j for fiber index `s`
/// (0-based within the fiber block), using the supplied lowered tensor.
double horizontality_residual(const Tensor3& c_low, const BlockLayout& layout,
                              const FormCoefficients& u, int s);
double horizontality_residual(const StructureTensor& st, const FormCoefficients& u, int s);

/// Negative control: a copy of c_low made symmetric in its first and third
/// slots by mirroring entries with first index < third index. Destroys the
/// antisymmetry that makes the horizontality residual vanish.
Tensor3 symmetrized_control(const Tensor3& c_low);

struct LogicalEntry {
  std::string statement;
  /// "trivial", "derived", or "assumption".
  std::string status;
  bool holds = true;
};

struct VerticalConstancyReport {
  std::vector<LogicalEntry> entries;
  bool pass = true;
};

/// Records the two steps that force the fiber components to vanish: the
/// contraction with a fiber Killing field is constant for invariant data,
/// and a nonzero constant is not square-integrable on an infinite-volume
/// space. `invariant_solution_dim` comes from invariant_harmonic_space.
VerticalConstancyReport vertical_constancy_check(const StructureTensor& st,
                                                 const std::string& algebra_name,
                                                 int invariant_solution_dim);

}  // namespace vhs
