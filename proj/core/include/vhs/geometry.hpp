#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "vhs/algebra.hpp"
#include "vhs/tensor.hpp"

namespace vhs {

/// Reductive homogeneous space G/H described inside a canonical basis.
/// The metric is `metric_scale` times the restriction of ds^2 = sum (w^a)^2,
/// so e_a = X_a / sqrt(metric_scale) is an orthonormal frame of the
/// complement. Complement indices list horizontal (m) directions first.
struct HomogeneousSpace {
  std::string label;
  std::vector<int> complement;
  std::vector<int> isotropy;
  int horizontal = 0;
  double metric_scale = 1.0;

  int dim() const { return static_cast<int>(complement.size()); }
  int fiber() const { return dim() - horizontal; }
};

/// G/K: complement m, isotropy k.
HomogeneousSpace symmetric_base(const StructureTensor& st, double metric_scale = 1.0);
/// G/V: complement m + (k minus v), isotropy v.
HomogeneousSpace period_domain(const StructureTensor& st, double metric_scale = 1.0);

struct Connection {
  HomogeneousSpace space;
  /// bracket(a, b, c) = <[e_a, e_b]_h, e_c> in the orthonormal frame.
  Tensor3 bracket;
  /// gamma(a, b, c) = <nabla_{e_a} e_b, e_c>.
  Tensor3 gamma;
  /// max |component of [isotropy, complement] in the isotropy|.
  double reductive_residual = 0.0;
};

/// 2<nabla_X Y, Z> = <[X,Y]_h, Z> - <[Y,Z]_h, X> + <[Z,X]_h, Y>.
/// Throws NumericalError if the complement is not Ad(isotropy)-invariant.
Connection koszul_connection(const HomogeneousSpace& space, const StructureTensor& st);

struct CurvatureModel {
  HomogeneousSpace space;
  int dim = 0;
  /// R(a, b, c, d) = <R(e_a, e_b) e_c, e_d> with
  /// R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
  Tensor4 R;
  Eigen::MatrixXd ricci;
  /// Q(ab, cd) = R(a, b, c, d) over index pairs a < b, c < d.
  Eigen::MatrixXd curvature_operator;
  /// bracket_components[t](a, b) = coefficient of X_t (any t in g) in [e_a, e_b].
  std::vector<Eigen::MatrixXd> bracket_components;
  double symmetry_residual = 0.0;
  double bianchi_residual = 0.0;
};

/// Nomizu form of the curvature of an invariant connection:
/// R(X,Y) = [L(X), L(Y)] - L([X,Y]_h) - ad([X,Y]_isotropy).
/// Throws NumericalError if the curvature symmetries fail at 1e-9.
CurvatureModel curvature_tensor(const Connection& connection, const StructureTensor& st);

/// Convenience: connection + curvature for a space.
CurvatureModel curvature_model(const HomogeneousSpace& space, const StructureTensor& st);

/// K = <R(X,Y)Y, X> for an orthonormal pair given in frame coordinates.
/// Throws InvalidInput for a non-orthonormal or degenerate pair.
double sectional_curvature(const CurvatureModel& cm, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Same value through the curvature operator, K = -w^T Q w with w = x ^ y.
/// No orthonormality check; used in inner loops.
double sectional_curvature_bivector(const CurvatureModel& cm, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y);

/// Ric(b, d) = sum_c R(c, b, d, c).
Eigen::MatrixXd ricci_tensor(const CurvatureModel& cm);

struct RicciSummary {
  Eigen::VectorXd eigenvalues;
  double rho = 0.0;
  double einstein_residual = 0.0;
};

RicciSummary ricci_summary(const CurvatureModel& cm);

/// Squared norm of [X, Y] in ds^2 for frame vectors x, y.
double bracket_norm_squared(const CurvatureModel& cm, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y);

/// Centralizer of a random regular element inside the complement; for a
/// symmetric base this is a maximal abelian subspace (dimension = rank).
Eigen::MatrixXd abelian_subspace(const CurvatureModel& cm, std::uint64_t seed);

struct SurveyConfig {
  int samples = 100000;
  int restarts = 50;
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;
  std::uint64_t seed = 0;
};

struct Plane {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct CurvatureReport {
  int dim = 0;
  double min_k = 0.0;
  double max_k = 0.0;
  Plane min_plane;
  Plane max_plane;
  int sample_count = 0;
  double sample_min = 0.0;
  double sample_max = 0.0;
  double sample_mean = 0.0;
  double sample_stddev = 0.0;
  int restarts = 0;
  int converged_min = 0;
  int converged_max = 0;
  RicciSummary ricci;
  /// Smallest ||[X, Y]||^2 found over orthonormal pairs.
  double flat_residual = 0.0;
  double flat_k = 0.0;
  Plane flat_plane;
};

/// Random 2-plane sampling plus projected gradient descent/ascent on the
/// Grassmannian of 2-planes. Non-converged restarts are counted, not fatal.
CurvatureReport curvature_survey(const CurvatureModel& cm, const SurveyConfig& config);

/// Curvature data of the symmetric base as tabulated for each family.
struct CurvatureTableRow {
  std::string type;
  double k_lower = 0.0;
  double k_upper = 0.0;
  double ricci = 0.0;
  bool constant_curvature = false;
};

/// Throws InvalidInput when the family is outside the table (SO with q < 2).
CurvatureTableRow curvature_table_row(const AlgebraSpec& spec);

struct TableFit {
  CurvatureTableRow row;
  /// Multiplier s on curvature values with s * min_k = row.k_lower.
  double scale = 0.0;
  double fitted_min_k = 0.0;
  double fitted_max_k = 0.0;
  double fitted_ricci = 0.0;
  double fitted_sample_stddev = 0.0;
  double ricci_rel_error = 0.0;
  double ratio = 0.0;           // min_k / rho
  double expected_ratio = 0.0;  // row.k_lower / row.ricci
  double ratio_rel_error = 0.0;
  /// |fitted max_k - row.k_upper| relative to |row.k_upper| for pinched rows.
  double upper_rel_error = 0.0;
  bool ricci_ok = false;
  bool ratio_ok = false;
  bool max_k_ok = false;
  bool upper_ok = false;
  bool constant_ok = true;
  bool pass = false;
};

/// One scalar fitted on the minimum sectional curvature, then the Ricci
/// value is checked against the table (1%), the normalization-free ratio
/// (2%), nonpositivity (1e-6), and for rank-one rows the sampled spread.
/// Throws NumericalError when min_k >= 0 (no positive scale exists).
TableFit fit_table_scale(const CurvatureReport& report, const AlgebraSpec& spec);

/// max |<nabla_{X_s} X_t, X_i>| over fiber s, t and horizontal i.
double fiber_second_fundamental_form(const Connection& period_connection);

/// max over i1, j1 of |(L_{X_s} g)(X_i1, X_j1)| for fiber index `s`
/// (0-based within the fiber block).
double killing_field_residual(const Connection& period_connection, int s);

struct JacobiSpectrum {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXd eigenvectors;   // frame coordinates, orthogonal to v
  double symmetry_residual = 0.0;
};

/// Eigendecomposition of w -> R(w, v) v on the orthogonal complement of v.
/// Throws InvalidInput for a non-unit v and NumericalError if the operator is
/// not symmetric to 1e-9.
JacobiSpectrum jacobi_operator(const CurvatureModel& cm, const Eigen::VectorXd& v);

}  // namespace vhs
