#include "vhs/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vhs/errors.hpp"

namespace vhs {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double StressEnergyFrame::divergence() const { return 1.0 + r * lambda.sum(); }

Eigen::MatrixXd StressEnergyFrame::covariant_derivative() const {
  Eigen::VectorXd diag(dim());
  diag << 1.0, r * lambda;
  return diag.asDiagonal();
}

PairingResult stress_energy_pairing(const StressEnergyFrame& frame) {
  if (frame.u_t.size() != frame.lambda.size()) {
    throw InvalidInput("stress_energy_pairing: component count does not match lambda");
  }
  const int n = frame.dim();
  Eigen::VectorXd omega(n);
  omega << frame.u_r, frame.u_t;
  Eigen::MatrixXd grad = frame.covariant_derivative();
  if (frame.rotation.size() != 0) {
    if (frame.rotation.rows() != n || frame.rotation.cols() != n) {
      throw InvalidInput("stress_energy_pairing: rotation has the wrong size");
    }
    grad = frame.rotation.transpose() * grad * frame.rotation;
    omega = frame.rotation.transpose() * omega;
  }

  PairingResult out;
  out.direct = 0.5 * omega.squaredNorm() * grad.trace() - omega.dot(grad * omega);

  out.grouped = radial_coefficient(frame.r, frame.lambda) * frame.u_r * frame.u_r;
  for (int s = 0; s < frame.lambda.size(); ++s) {
    const double half_sum = 0.5 + 0.5 * frame.r * frame.lambda.sum();
    out.grouped += (half_sum - frame.r * frame.lambda(s)) * frame.u_t(s) * frame.u_t(s);
  }
  out.difference = std::abs(out.direct - out.grouped);
  return out;
}

double radial_coefficient(double r, const Eigen::VectorXd& lambda) {
  return 0.5 * r * lambda.sum() - 0.5;
}

double tangential_coefficient(double r, const Eigen::VectorXd& lambda, int s) {
  const double a_s = lambda.sum() - 2.0 * lambda(s);
  return 0.5 + 0.5 * r * a_s;
}

CoercivityResult coercivity_constant(const std::vector<RadialProfile>& profiles, double slack) {
  if (profiles.empty()) throw InvalidInput("coercivity_constant: no profiles");
  CoercivityResult out;
  out.radial_min = std::numeric_limits<double>::infinity();
  out.tangential_min = std::numeric_limits<double>::infinity();
  int n = std::numeric_limits<int>::max();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : profiles) {
    n = std::min(n, p.base_dimension());
    for (std::size_t i = 0; i < p.r.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double r = p.r[i];
      const double radial = 0.5 * r * p.laplacian(row) - 0.5;
      const double tangential = 0.5 + 0.5 * r * p.a_s.row(row).minCoeff();
      out.radial_min = std::min(out.radial_min, radial);
      out.tangential_min = std::min(out.tangential_min, tangential);
      if (std::min(radial, tangential) < best) {
        best = std::min(radial, tangential);
        out.argmin_r = r;
      }
    }
  }
  out.c0 = std::min(out.radial_min, out.tangential_min);
  out.bound = std::min(0.5 * (n - 2), 0.5);
  out.falsified = out.c0 <= 0.0;
  out.pass = !out.falsified && out.c0 >= out.bound - slack;
  return out;
}

GrowthReport growth_report(double c, double r0, double inconclusive_below) {
  if (!(c > 0.0)) throw InvalidInput("growth_report: the coercivity constant must be positive");
  if (!(r0 > 0.0)) throw InvalidInput("growth_report: R0 must be positive");
  GrowthReport out;
  out.c = c;
  out.r0 = r0;
  for (double factor : {10.0, 100.0, 1000.0}) {
    const double radius = factor * r0;
    out.radii.push_back(radius);
    out.partial_integrals.push_back(2.0 * c * std::log(radius / r0));
  }
  out.conclusive = c >= inconclusive_below;

  out.chain.push_back("pointwise: <S_w, grad X> >= C |w|^2 with C = " + format_number(c));
  out.chain.push_back("integrated over the preimage of B_R: >= C' > 0 for R >= R0 = " +
                      format_number(r0) + " whenever w is not identically zero");
  out.chain.push_back("boundary term: (1/2) int |w|^2 <X, n> - int <i_X w, i_n w> <= (R/2) int |w|^2");
  out.chain.push_back("stress-energy identity: boundary term = interior pairing + int <i_X w, i_n w>");
  out.chain.push_back("hence int over the boundary sphere of |w|^2 >= 2C/R for R >= R0");
  out.chain.push_back("integrating in R: int_N |w|^2 >= int_{R0}^inf 2C/R dR = inf");
  if (out.conclusive) {
    out.conclusion =
        "no nonzero L2-harmonic 1-form is consistent with these constants: the L2 norm "
        "diverges, so w = 0";
  } else {
    out.conclusion = "inconclusive: the coercivity constant is numerically zero and the bound is "
                     "vacuous";
  }
  return out;
}

double coercive_radius(double c0, const RadialProfile& profile, double threshold) {
  if (profile.r.empty()) throw InvalidInput("coercive_radius: empty profile");
  double integral = 0.0;
  const auto density = [&](double r) {
    double area = 1.0;
    for (double k : profile.jacobi_eigenvalues) {
      const double mu = std::sqrt(-k);
      area *= mu * r < 1e-8 ? r : std::sinh(mu * r) / mu;
    }
    return c0 * area;
  };
  double prev_r = profile.r.front();
  double prev_f = density(prev_r);
  for (std::size_t i = 1; i < profile.r.size(); ++i) {
    const double r = profile.r[i];
    const double f = density(r);
    integral += 0.5 * (f + prev_f) * (r - prev_r);
    if (integral >= threshold) return r;
    prev_r = r;
    prev_f = f;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace vhs
