#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "vhs/radial.hpp"

namespace vhs {

/// Pointwise data for the pairing of the stress-energy tensor of a 1-form
/// with the covariant derivative of X = r d/dr.
///
/// `lambda` are the Hessian eigenvalues of r on the tangential directions,
/// `u_r` and `u_t` the form components along d/dr and along the
/// diagonalizing tangential frame. `rotation` (orthogonal, n x n, first
/// axis radial) re-expresses everything in a non-diagonal frame for the
/// direct evaluation; identity when empty.
struct StressEnergyFrame {
  double r = 1.0;
  Eigen::VectorXd lambda;
  double u_r = 0.0;
  Eigen::VectorXd u_t;
  Eigen::MatrixXd rotation;

  int dim() const { return static_cast<int>(lambda.size()) + 1; }
  double norm_squared() const { return u_r * u_r + u_t.squaredNorm(); }
  /// div X = 1 + r sum lambda.
  double divergence() const;
  /// grad X in the diagonal frame: diag(1, r lambda_1, ...).
  Eigen::MatrixXd covariant_derivative() const;
};

struct PairingResult {
  double direct = 0.0;   // |w|^2 div X / 2 - <w (.) w, grad X>, any frame
  double grouped = 0.0;  // radial and tangential coefficients, diagonal frame
  double difference = 0.0;
};

PairingResult stress_energy_pairing(const StressEnergyFrame& frame);

/// Coefficient of |u_r|^2: (1/2) sum_t r lambda_t - 1/2.
double radial_coefficient(double r, const Eigen::VectorXd& lambda);
/// Coefficient of u_s^2: 1/2 + (1/2) r A_s.
double tangential_coefficient(double r, const Eigen::VectorXd& lambda, int s);

struct CoercivityResult {
  double c0 = 0.0;
  double radial_min = 0.0;
  double tangential_min = 0.0;
  double argmin_r = 0.0;
  double bound = 0.0;  // min((n - 2)/2, 1/2)
  bool pass = false;
  /// C0 <= 0 would contradict the positivity of the pairing.
  bool falsified = false;
};

CoercivityResult coercivity_constant(const std::vector<RadialProfile>& profiles,
                                     double slack = 1e-6);

struct GrowthReport {
  double c = 0.0;
  double r0 = 0.0;
  std::vector<double> radii;
  /// Lower bounds 2C ln(R / R0) for the integral of |w|^2 over R0 < r < R.
  std::vector<double> partial_integrals;
  bool conclusive = false;
  std::vector<std::string> chain;
  std::string conclusion;
};

/// Endgame bookkeeping: boundary integrals bounded below by 2C/R for R >= R0,
/// so the total integral diverges logarithmically. Throws InvalidInput for
/// C <= 0; C below `inconclusive_below` yields a vacuous, inconclusive report.
GrowthReport growth_report(double c, double r0, double inconclusive_below = 1e-9);

/// Smallest grid radius where C0 times the geodesic-sphere area density
/// (prod_t sinh(mu_t r)/mu_t, with r for flat directions) integrated from
/// the first grid radius reaches `threshold`.
double coercive_radius(double c0, const RadialProfile& profile, double threshold = 1.0);

}  // namespace vhs
