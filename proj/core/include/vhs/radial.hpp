#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace vhs {

/// Curvature bounds -a2 <= K <= 0 and Ric <= -b2 on an n-dimensional base.
struct ComparisonParams {
  double a2 = 0.0;
  double b2 = 0.0;
  int n = 0;
};

/// Throws InvalidInput unless a2 >= 0, b2 > 0 and n >= 4.
void validate(const ComparisonParams& params);

/// Log-spaced radii in [lo, hi].
std::vector<double> log_grid(double lo = 1e-3, double hi = 100.0, int points = 2000);

/// Hessian eigenvalue of the distance function along a radial geodesic whose
/// Jacobi operator has eigenvalue `k` (<= 0): mu coth(mu r), mu = sqrt(-k);
/// 1/r for k = 0. Throws InvalidInput for r <= 0 or k > 0.
double radial_hessian(double k, double r);

struct RiccatiOptions {
  double r0 = 1e-4;
  double rtol = 1e-10;
  double atol = 1e-14;
  int max_steps = 10'000'000;
};

/// Integrates lambda' = -k - lambda^2 from the small-r series value
/// 1/r0 + (-k) r0 / 3 with adaptive step-doubling RK4 and returns lambda at
/// each grid radius (grid must be increasing and start above r0).
/// Throws NumericalError if the step size collapses.
std::vector<double> riccati_oracle(double k, const std::vector<double>& grid,
                                   const RiccatiOptions& options = {});

/// Radial data along one unit direction of a symmetric base.
struct RadialProfile {
  std::string label;
  std::vector<double> jacobi_eigenvalues;  // n - 1 values, all <= 0
  std::vector<double> r;
  Eigen::MatrixXd lambda;  // grid x (n - 1)
  Eigen::VectorXd laplacian;
  Eigen::MatrixXd a_s;     // grid x (n - 1)

  int tangential() const { return static_cast<int>(jacobi_eigenvalues.size()); }
  int base_dimension() const { return tangential() + 1; }
};

/// Eigenvalues within `clamp` above zero are treated as flat (roundoff);
/// larger positive values throw InvalidInput. Requires base dimension >= 4.
RadialProfile build_profile(std::vector<double> jacobi_eigenvalues, std::vector<double> grid,
                            std::string label = {}, double clamp = 1e-9);

struct ASResult {
  std::vector<double> values;
  double min_value = 0.0;
  bool positive = false;
  /// min over interior grid points of dA/dr + A * laplacian (finite differences).
  double min_differential_margin = 0.0;
  bool differential_ok = false;
};

/// A_s = sum_t lambda_t - 2 lambda_s and the check dA_s/dr >= -A_s * laplacian
/// up to `slack`.
ASResult a_s_profile(const RadialProfile& profile, int s, double slack = 1e-6);

struct ComparisonResult {
  double min_value = 0.0;      // min over the grid of (1/2) sum r lambda - 1/2
  double bound = 0.0;          // (n - 2) / 2
  double min_r_lambda = 0.0;   // min over grid and directions of r lambda
  bool pass = false;
};

ComparisonResult comparison_check(const RadialProfile& profile, double slack = 1e-9);

/// b2 - 2 a2 from fitted curvature extremes.
double ricci_gap(double fitted_min_k, double fitted_rho);

/// Finite-difference derivative on a nonuniform grid (second order inside,
/// first order at the ends).
std::vector<double> grid_derivative(const std::vector<double>& r, const std::vector<double>& f);

}  // namespace vhs
