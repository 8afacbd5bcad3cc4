#include "vhs/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vhs/errors.hpp"

namespace vhs {

void validate(const ComparisonParams& params) {
  if (params.a2 < 0.0) throw InvalidInput("comparison: a2 must be nonnegative");
  if (params.b2 <= 0.0) throw InvalidInput("comparison: b2 must be positive");
  if (params.n < 4) throw InvalidInput("comparison: base dimension must be at least 4");
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (lo <= 0.0 || hi <= lo || points < 2) throw InvalidInput("log_grid: bad range");
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

double radial_hessian(double k, double r) {
  if (!(r > 0.0)) throw InvalidInput("radial_hessian: r must be positive");
  if (k > 0.0) throw InvalidInput("radial_hessian: curvature eigenvalue must be nonpositive");
  const double mu = std::sqrt(-k);
  const double x = mu * r;
  if (x < 1e-4) {
    // x coth x = 1 + x^2/3 - x^4/45 + ...
    const double x2 = x * x;
    return (1.0 + x2 / 3.0 - x2 * x2 / 45.0) / r;
  }
  return mu / std::tanh(x);
}

namespace {

double rk4_step(double k, double lam, double h) {
  const auto f = [k](double l) { return -k - l * l; };
  const double k1 = f(lam);
  const double k2 = f(lam + 0.5 * h * k1);
  const double k3 = f(lam + 0.5 * h * k2);
  const double k4 = f(lam + h * k3);
  return lam + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<double> riccati_oracle(double k, const std::vector<double>& grid,
                                   const RiccatiOptions& options) {
  if (k > 0.0) throw InvalidInput("riccati_oracle: curvature eigenvalue must be nonpositive");
  if (grid.empty() || grid.front() <= options.r0) {
    throw InvalidInput("riccati_oracle: grid must start above r0");
  }
  std::vector<double> out;
  out.reserve(grid.size());
  double r = options.r0;
  double lam = 1.0 / r + (-k) * r / 3.0;
  double h = 1e-3 * r;
  int steps = 0;
  for (double target : grid) {
    while (r < target) {
      if (++steps > options.max_steps) throw NumericalError("riccati_oracle: too many steps");
      h = std::min(h, target - r);
      // Step doubling: one full step against two half steps.
      const double full = rk4_step(k, lam, h);
      const double half = rk4_step(k, rk4_step(k, lam, 0.5 * h), 0.5 * h);
      const double err = std::abs(half - full) / 15.0;
      const double scale = options.atol + options.rtol * std::abs(half);
      if (err <= scale) {
        r += h;
        lam = half + (half - full) / 15.0;  // Richardson extrapolation
        const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
        h *= std::clamp(grow, 1.0, 4.0);
      } else {
        h *= std::clamp(0.9 * std::pow(scale / err, 0.25), 0.1, 0.9);
      }
      if (h < 1e-15 * r) throw NumericalError("riccati_oracle: step size collapsed");
    }
    out.push_back(lam);
  }
  return out;
}

RadialProfile build_profile(std::vector<double> jacobi_eigenvalues, std::vector<double> grid,
                            std::string label, double clamp) {
  if (jacobi_eigenvalues.size() + 1 < 4) {
    throw InvalidInput("build_profile: base dimension must be at least 4");
  }
  for (double& k : jacobi_eigenvalues) {
    if (k > clamp) throw InvalidInput("build_profile: positive radial curvature " + std::to_string(k));
    k = std::min(k, 0.0);
  }
  RadialProfile p;
  p.label = std::move(label);
  p.jacobi_eigenvalues = std::move(jacobi_eigenvalues);
  p.r = std::move(grid);
  const auto rows = static_cast<Eigen::Index>(p.r.size());
  const auto cols = static_cast<Eigen::Index>(p.jacobi_eigenvalues.size());
  p.lambda.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index t = 0; t < cols; ++t) {
      p.lambda(i, t) = radial_hessian(p.jacobi_eigenvalues[t], p.r[i]);
    }
  }
  p.laplacian = p.lambda.rowwise().sum();
  p.a_s.resize(rows, cols);
  for (Eigen::Index t = 0; t < cols; ++t) p.a_s.col(t) = p.laplacian - 2.0 * p.lambda.col(t);
  return p;
}

std::vector<double> grid_derivative(const std::vector<double>& r, const std::vector<double>& f) {
  const std::size_t n = r.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = r[i] - r[i - 1];
    const double h1 = r[i + 1] - r[i];
    out[i] = (-h1 / (h0 * (h0 + h1))) * f[i - 1] + ((h1 - h0) / (h0 * h1)) * f[i] +
             (h0 / (h1 * (h0 + h1))) * f[i + 1];
  }
  out.front() = (f[1] - f[0]) / (r[1] - r[0]);
  out.back() = (f[n - 1] - f[n - 2]) / (r[n - 1] - r[n - 2]);
  return out;
}

ASResult a_s_profile(const RadialProfile& profile, int s, double slack) {
  if (s < 0 || s >= profile.tangential()) throw InvalidInput("a_s_profile: bad tangential index");
  ASResult out;
  const auto col = profile.a_s.col(s);
  out.values.assign(col.data(), col.data() + col.size());
  out.min_value = *std::min_element(out.values.begin(), out.values.end());
  out.positive = out.min_value > 0.0;

  const auto derivative = grid_derivative(profile.r, out.values);
  out.min_differential_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < profile.r.size(); ++i) {
    const double margin =
        derivative[i] + out.values[i] * profile.laplacian(static_cast<Eigen::Index>(i));
    out.min_differential_margin = std::min(out.min_differential_margin, margin);
  }
  out.differential_ok = out.min_differential_margin >= -slack;
  return out;
}

ComparisonResult comparison_check(const RadialProfile& profile, double slack) {
  ComparisonResult out;
  const int n = profile.base_dimension();
  out.bound = 0.5 * (n - 2);
  out.min_value = std::numeric_limits<double>::infinity();
  out.min_r_lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double r = profile.r[i];
    out.min_value = std::min(out.min_value, 0.5 * r * profile.laplacian(row) - 0.5);
    out.min_r_lambda = std::min(out.min_r_lambda, r * profile.lambda.row(row).minCoeff());
  }
  out.pass = out.min_value >= out.bound - slack;
  return out;
}

double ricci_gap(double fitted_min_k, double fitted_rho) {
  return std::abs(fitted_rho) - 2.0 * std::abs(fitted_min_k);
}

}  // namespace vhs
