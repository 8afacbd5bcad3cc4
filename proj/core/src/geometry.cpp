#include "vhs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "vhs/errors.hpp"
#include "vhs/random.hpp"
#include "vhs/tolerances.hpp"

namespace vhs {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kSymmetryTolerance = 1e-9;

int pair_count(int n) { return n * (n - 1) / 2; }

VectorXd wedge(const VectorXd& x, const VectorXd& y) {
  const auto n = static_cast<int>(x.size());
  VectorXd w(pair_count(n));
  int p = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) w(p++) = x(a) * y(b) - x(b) * y(a);
  }
  return w;
}

// Antisymmetric n x n matrix with upper triangle taken from a pair vector.
MatrixXd unpack_pairs(const VectorXd& u, int n) {
  MatrixXd w = MatrixXd::Zero(n, n);
  int p = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      w(a, b) = u(p);
      w(b, a) = -u(p);
      ++p;
    }
  }
  return w;
}

bool orthonormalize_plane(VectorXd& x, VectorXd& y) {
  const double nx = x.norm();
  if (nx < 1e-300) return false;
  x /= nx;
  y -= x.dot(y) * x;
  y -= x.dot(y) * x;
  const double ny = y.norm();
  if (ny < 1e-300) return false;
  y /= ny;
  return true;
}

Plane random_plane(std::mt19937_64& rng, int n) {
  Plane p{random_gaussian(rng, n), random_gaussian(rng, n)};
  while (!orthonormalize_plane(p.x, p.y)) p = {random_gaussian(rng, n), random_gaussian(rng, n)};
  return p;
}

// Objective on orthonormal pairs; fills Euclidean gradients.
using PlaneObjective =
    std::function<double(const VectorXd& x, const VectorXd& y, VectorXd& gx, VectorXd& gy)>;

struct OptimizeResult {
  Plane plane;
  double value = 0.0;
  bool converged = false;
};

// Projected gradient descent on the Grassmannian of 2-planes with Armijo
// step halving. A line search that cannot decrease the objective at machine
// precision counts as converged: the point is stationary to working accuracy.
OptimizeResult descend(const PlaneObjective& f, Plane start, int max_iterations,
                       double gradient_tolerance) {
  OptimizeResult out;
  VectorXd x = start.x;
  VectorXd y = start.y;
  orthonormalize_plane(x, y);
  VectorXd gx, gy, gx_new, gy_new;
  double value = f(x, y, gx, gy);
  double step = 1.0;

  const auto project = [&](VectorXd& g) { g -= x * x.dot(g) + y * y.dot(g); };
  project(gx);
  project(gy);

  for (int it = 0; it < max_iterations; ++it) {
    const double gnorm2 = gx.squaredNorm() + gy.squaredNorm();
    if (std::sqrt(gnorm2) < gradient_tolerance) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      VectorXd xn = x - step * gx;
      VectorXd yn = y - step * gy;
      if (orthonormalize_plane(xn, yn)) {
        const double candidate = f(xn, yn, gx_new, gy_new);
        if (candidate <= value - 1e-4 * step * gnorm2) {
          x = std::move(xn);
          y = std::move(yn);
          value = candidate;
          gx = gx_new;
          gy = gy_new;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    project(gx);
    project(gy);
    step = std::min(2.0 * step, 1e3);
  }
  out.plane = {x, y};
  out.value = value;
  return out;
}

// Complement-projected bracket coefficient of canonical indices in a frame
// scaled by 1/sqrt(metric_scale).
double frame_bracket(const StructureTensor& st, const HomogeneousSpace& space, int a, int b,
                     int c, double inv_sqrt_scale) {
  return st.c_up(space.complement[a], space.complement[b], space.complement[c]) * inv_sqrt_scale;
}

}  // namespace

HomogeneousSpace symmetric_base(const StructureTensor& st, double metric_scale) {
  HomogeneousSpace s;
  s.label = "G/K";
  const int n = st.layout.n;
  for (int i = 0; i < n; ++i) s.complement.push_back(i);
  for (int a = n; a < st.layout.dim(); ++a) s.isotropy.push_back(a);
  s.horizontal = n;
  s.metric_scale = metric_scale;
  return s;
}

HomogeneousSpace period_domain(const StructureTensor& st, double metric_scale) {
  HomogeneousSpace s;
  s.label = "G/V";
  for (int i = 0; i < st.layout.n1(); ++i) s.complement.push_back(i);
  for (int a = st.layout.n1(); a < st.layout.dim(); ++a) s.isotropy.push_back(a);
  s.horizontal = st.layout.n;
  s.metric_scale = metric_scale;
  return s;
}

Connection koszul_connection(const HomogeneousSpace& space, const StructureTensor& st) {
  if (space.metric_scale <= 0.0) throw InvalidInput("metric scale must be positive");
  const int n = space.dim();
  const double inv = 1.0 / std::sqrt(space.metric_scale);
  Connection out;
  out.space = space;

  for (int beta : space.isotropy) {
    for (int a : space.complement) {
      for (int gamma : space.isotropy) {
        out.reductive_residual = std::max(out.reductive_residual, std::abs(st.c_up(beta, a, gamma)));
      }
    }
  }
  if (out.reductive_residual > tol::kIdentity) {
    throw NumericalError("koszul_connection: complement is not reductive (residual " +
                         std::to_string(out.reductive_residual) + ")");
  }

  out.bracket = Tensor3(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) out.bracket(a, b, c) = frame_bracket(st, space, a, b, c, inv);
    }
  }
  out.gamma = Tensor3(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        out.gamma(a, b, c) =
            0.5 * (out.bracket(a, b, c) - out.bracket(b, c, a) + out.bracket(c, a, b));
      }
    }
  }
  return out;
}

CurvatureModel curvature_tensor(const Connection& connection, const StructureTensor& st) {
  const auto& space = connection.space;
  const int n = space.dim();
  const auto& gam = connection.gamma;
  const auto& br = connection.bracket;
  const double inv_scale = 1.0 / space.metric_scale;

  CurvatureModel cm;
  cm.space = space;
  cm.dim = n;
  cm.R = Tensor4(n);

  // Isotropy part of [e_a, e_b] acting on e_c, contracted with e_d.
  std::vector<MatrixXd> iso_bracket;  // iso_bracket[beta](a, b)
  std::vector<MatrixXd> iso_action;   // iso_action[beta](c, d)
  for (int beta : space.isotropy) {
    MatrixXd ab(n, n), cd(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        ab(a, b) = st.c_up(space.complement[a], space.complement[b], beta);
        cd(a, b) = st.c_up(beta, space.complement[a], space.complement[b]);
      }
    }
    iso_bracket.push_back(std::move(ab));
    iso_action.push_back(std::move(cd));
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          double sum = 0.0;
          for (int e = 0; e < n; ++e) {
            sum += gam(b, c, e) * gam(a, e, d) - gam(a, c, e) * gam(b, e, d) -
                   br(a, b, e) * gam(e, c, d);
          }
          for (std::size_t beta = 0; beta < iso_bracket.size(); ++beta) {
            sum -= iso_bracket[beta](a, b) * iso_action[beta](c, d) * inv_scale;
          }
          cm.R(a, b, c, d) = sum;
        }
      }
    }
  }

  const auto& R = cm.R;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const double v = R(a, b, c, d);
          cm.symmetry_residual = std::max({cm.symmetry_residual, std::abs(v + R(b, a, c, d)),
                                           std::abs(v + R(a, b, d, c)),
                                           std::abs(v - R(c, d, a, b))});
          cm.bianchi_residual =
              std::max(cm.bianchi_residual, std::abs(v + R(b, c, a, d) + R(c, a, b, d)));
        }
      }
    }
  }
  if (cm.symmetry_residual > kSymmetryTolerance || cm.bianchi_residual > kSymmetryTolerance) {
    throw NumericalError("curvature_tensor: symmetry residual " +
                         std::to_string(cm.symmetry_residual) + ", Bianchi residual " +
                         std::to_string(cm.bianchi_residual));
  }

  cm.ricci = ricci_tensor(cm);

  const int pairs = pair_count(n);
  cm.curvature_operator.resize(pairs, pairs);
  int p = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b, ++p) {
      int q = 0;
      for (int c = 0; c < n; ++c) {
        for (int d = c + 1; d < n; ++d, ++q) cm.curvature_operator(p, q) = R(a, b, c, d);
      }
    }
  }

  const int total = st.layout.dim();
  const double inv = 1.0 / std::sqrt(space.metric_scale);
  cm.bracket_components.assign(total, MatrixXd::Zero(n, n));
  for (int t = 0; t < total; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        cm.bracket_components[t](a, b) =
            st.c_up(space.complement[a], space.complement[b], t) * inv;
      }
    }
  }
  return cm;
}

CurvatureModel curvature_model(const HomogeneousSpace& space, const StructureTensor& st) {
  return curvature_tensor(koszul_connection(space, st), st);
}

double sectional_curvature(const CurvatureModel& cm, const VectorXd& x, const VectorXd& y) {
  if (x.size() != cm.dim || y.size() != cm.dim) {
    throw InvalidInput("sectional_curvature: vector size does not match the model");
  }
  if (std::abs(x.norm() - 1.0) > tol::kIdentity || std::abs(y.norm() - 1.0) > tol::kIdentity ||
      std::abs(x.dot(y)) > tol::kIdentity) {
    throw InvalidInput("sectional_curvature: plane vectors must be orthonormal");
  }
  const int n = cm.dim;
  double k = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double xy = x(a) * y(b);
      if (xy == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) k += cm.R(a, b, c, d) * xy * y(c) * x(d);
      }
    }
  }
  return k;
}

double sectional_curvature_bivector(const CurvatureModel& cm, const VectorXd& x,
                                    const VectorXd& y) {
  const VectorXd w = wedge(x, y);
  return -w.dot(cm.curvature_operator * w);
}

Eigen::MatrixXd ricci_tensor(const CurvatureModel& cm) {
  const int n = cm.dim;
  MatrixXd ric = MatrixXd::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      double sum = 0.0;
      for (int c = 0; c < n; ++c) sum += cm.R(c, b, d, c);
      ric(b, d) = sum;
    }
  }
  return ric;
}

RicciSummary ricci_summary(const CurvatureModel& cm) {
  RicciSummary out;
  const MatrixXd sym = 0.5 * (cm.ricci + cm.ricci.transpose());
  out.eigenvalues = Eigen::SelfAdjointEigenSolver<MatrixXd>(sym).eigenvalues();
  out.rho = cm.ricci.trace() / cm.dim;
  out.einstein_residual =
      (cm.ricci - out.rho * MatrixXd::Identity(cm.dim, cm.dim)).cwiseAbs().maxCoeff();
  return out;
}

double bracket_norm_squared(const CurvatureModel& cm, const VectorXd& x, const VectorXd& y) {
  double sum = 0.0;
  for (const auto& m : cm.bracket_components) {
    const double v = x.dot(m * y);
    sum += v * v;
  }
  return sum;
}

Eigen::MatrixXd abelian_subspace(const CurvatureModel& cm, std::uint64_t seed) {
  auto rng = make_rng(seed, 0xab);
  const VectorXd x0 = random_unit_vector(rng, cm.dim);
  MatrixXd constraints(static_cast<Eigen::Index>(cm.bracket_components.size()), cm.dim);
  for (std::size_t t = 0; t < cm.bracket_components.size(); ++t) {
    constraints.row(static_cast<Eigen::Index>(t)) = x0.transpose() * cm.bracket_components[t];
  }
  Eigen::JacobiSVD<MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol::kRank) ++rank;
  return svd.matrixV().rightCols(cm.dim - rank);
}

namespace {

struct SampleChunk {
  int count = 0;
  double min_k = std::numeric_limits<double>::infinity();
  double max_k = -std::numeric_limits<double>::infinity();
  Plane min_plane;
  Plane max_plane;
  double mean = 0.0;
  double m2 = 0.0;
};

SampleChunk sample_chunk(const CurvatureModel& cm, std::uint64_t seed, std::uint64_t stream,
                         int count) {
  auto rng = make_rng(seed, stream);
  SampleChunk out;
  for (int i = 0; i < count; ++i) {
    const Plane p = random_plane(rng, cm.dim);
    const double k = sectional_curvature_bivector(cm, p.x, p.y);
    ++out.count;
    const double delta = k - out.mean;
    out.mean += delta / out.count;
    out.m2 += delta * (k - out.mean);
    if (k < out.min_k) {
      out.min_k = k;
      out.min_plane = p;
    }
    if (k > out.max_k) {
      out.max_k = k;
      out.max_plane = p;
    }
  }
  return out;
}

}  // namespace

CurvatureReport curvature_survey(const CurvatureModel& cm, const SurveyConfig& config) {
  if (cm.dim < 2) throw InvalidInput("curvature_survey: need at least a 2-dimensional space");
  CurvatureReport out;
  out.dim = cm.dim;
  out.restarts = config.restarts;
  out.ricci = ricci_summary(cm);

  // Fixed chunking keeps the result independent of the worker count.
  constexpr int kChunks = 8;
  std::vector<int> counts(kChunks, config.samples / kChunks);
  for (int i = 0; i < config.samples % kChunks; ++i) ++counts[i];
  std::vector<std::future<SampleChunk>> futures;
  const bool parallel = std::thread::hardware_concurrency() > 1;
  for (int c = 0; c < kChunks; ++c) {
    futures.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                 sample_chunk, std::cref(cm), config.seed,
                                 static_cast<std::uint64_t>(c), counts[c]));
  }
  SampleChunk total;
  for (auto& f : futures) {
    const SampleChunk chunk = f.get();
    if (chunk.count == 0) continue;
    const int combined = total.count + chunk.count;
    const double delta = chunk.mean - total.mean;
    total.m2 += chunk.m2 + delta * delta * total.count * chunk.count / combined;
    total.mean += delta * chunk.count / combined;
    total.count = combined;
    if (chunk.min_k < total.min_k) {
      total.min_k = chunk.min_k;
      total.min_plane = chunk.min_plane;
    }
    if (chunk.max_k > total.max_k) {
      total.max_k = chunk.max_k;
      total.max_plane = chunk.max_plane;
    }
  }
  out.sample_count = total.count;
  out.sample_mean = total.mean;
  out.sample_stddev = total.count > 1 ? std::sqrt(total.m2 / (total.count - 1)) : 0.0;
  out.sample_min = total.count > 0 ? total.min_k : 0.0;
  out.sample_max = total.count > 0 ? total.max_k : 0.0;

  const int n = cm.dim;
  const auto sectional = [&cm, n](double sign) {
    return PlaneObjective([&cm, n, sign](const VectorXd& x, const VectorXd& y, VectorXd& gx,
                                         VectorXd& gy) {
      const VectorXd w = wedge(x, y);
      const VectorXd u = cm.curvature_operator * w;
      const MatrixXd wm = unpack_pairs(u, n);
      gx = sign * (-2.0) * (wm * y);
      gy = sign * 2.0 * (wm * x);
      return sign * -w.dot(u);
    });
  };

  auto rng = make_rng(config.seed, 1000);
  out.min_k = out.sample_count > 0 ? out.sample_min : std::numeric_limits<double>::infinity();
  out.max_k = out.sample_count > 0 ? out.sample_max : -std::numeric_limits<double>::infinity();
  out.min_plane = total.min_plane;
  out.max_plane = total.max_plane;
  for (int r = 0; r < config.restarts; ++r) {
    const bool seeded = r == 0 && out.sample_count > 0;
    const Plane start_min = seeded ? total.min_plane : random_plane(rng, n);
    const Plane start_max = seeded ? total.max_plane : random_plane(rng, n);
    const auto lo = descend(sectional(1.0), start_min, config.max_iterations,
                            config.gradient_tolerance);
    const auto hi = descend(sectional(-1.0), start_max, config.max_iterations,
                            config.gradient_tolerance);
    out.converged_min += lo.converged;
    out.converged_max += hi.converged;
    if (lo.value < out.min_k) {
      out.min_k = lo.value;
      out.min_plane = lo.plane;
    }
    if (-hi.value > out.max_k) {
      out.max_k = -hi.value;
      out.max_plane = hi.plane;
    }
  }

  const PlaneObjective flatness = [&cm](const VectorXd& x, const VectorXd& y, VectorXd& gx,
                                        VectorXd& gy) {
    gx = VectorXd::Zero(x.size());
    gy = VectorXd::Zero(y.size());
    double sum = 0.0;
    for (const auto& m : cm.bracket_components) {
      const VectorXd my = m * y;
      const double v = x.dot(my);
      if (v == 0.0) continue;
      sum += v * v;
      gx += 2.0 * v * my;
      gy += 2.0 * v * (m.transpose() * x);
    }
    return sum;
  };
  out.flat_residual = std::numeric_limits<double>::infinity();
  const int flat_restarts = std::max(1, config.restarts / 5);
  for (int r = 0; r < flat_restarts; ++r) {
    const auto res =
        descend(flatness, random_plane(rng, n), config.max_iterations, config.gradient_tolerance);
    if (res.value < out.flat_residual) {
      out.flat_residual = res.value;
      out.flat_plane = res.plane;
    }
  }
  out.flat_k = sectional_curvature_bivector(cm, out.flat_plane.x, out.flat_plane.y);
  return out;
}

CurvatureTableRow curvature_table_row(const AlgebraSpec& spec) {
  CurvatureTableRow row;
  row.type = spec.space_label();
  if (spec.family == Family::SO) {
    if (!spec.table_applicable()) {
      throw InvalidInput("the curvature table covers SO(p,2q)/SO(p)xSO(2q) only for q >= 2, got " +
                         spec.name());
    }
    const int p = spec.param1;
    const int q = spec.param2;
    row.ricci = -(p + 2.0 * q - 2.0);
    if (p == 1) {
      row.k_lower = row.k_upper = -1.0;
      row.constant_curvature = true;
    } else {
      row.k_lower = -2.0;
      row.k_upper = 0.0;
    }
  } else {
    const int m = spec.param1;
    const int n = spec.param2;
    row.ricci = -4.0 * (n + m + 1);
    row.k_lower = -4.0;
    if (m == 1 && n == 1) {
      row.k_upper = -4.0;
      row.constant_curvature = true;
    } else if (std::min(m, n) == 1) {
      row.k_upper = -1.0;
    } else {
      row.k_upper = 0.0;
    }
  }
  return row;
}

TableFit fit_table_scale(const CurvatureReport& report, const AlgebraSpec& spec) {
  TableFit fit;
  fit.row = curvature_table_row(spec);
  if (!(report.min_k < 0.0)) {
    throw NumericalError("fit_table_scale: minimum sectional curvature is not negative; no "
                         "positive scale matches the table");
  }
  constexpr double kRicciRel = 0.01;
  constexpr double kRatioRel = 0.02;
  constexpr double kMaxK = 1e-6;
  constexpr double kConstantSpread = 1e-6;

  fit.scale = fit.row.k_lower / report.min_k;
  fit.fitted_min_k = fit.scale * report.min_k;
  fit.fitted_max_k = fit.scale * report.max_k;
  fit.fitted_ricci = fit.scale * report.ricci.rho;
  fit.fitted_sample_stddev = fit.scale * report.sample_stddev;
  fit.ricci_rel_error = std::abs(fit.fitted_ricci - fit.row.ricci) / std::abs(fit.row.ricci);
  fit.ratio = report.min_k / report.ricci.rho;
  fit.expected_ratio = fit.row.k_lower / fit.row.ricci;
  fit.ratio_rel_error = std::abs(fit.ratio - fit.expected_ratio) / std::abs(fit.expected_ratio);
  fit.ricci_ok = fit.ricci_rel_error <= kRicciRel;
  fit.ratio_ok = fit.ratio_rel_error <= kRatioRel;
  fit.max_k_ok = report.max_k <= kMaxK;
  if (fit.row.k_upper < 0.0) {
    fit.upper_rel_error = std::abs(fit.fitted_max_k - fit.row.k_upper) / std::abs(fit.row.k_upper);
    fit.upper_ok = fit.upper_rel_error <= kRatioRel;
  } else {
    fit.upper_ok = fit.max_k_ok;
  }
  if (fit.row.constant_curvature) {
    fit.constant_ok = fit.fitted_sample_stddev < kConstantSpread &&
                      std::abs(fit.fitted_max_k - fit.fitted_min_k) < kConstantSpread;
  }
  fit.pass = fit.ricci_ok && fit.ratio_ok && fit.max_k_ok && fit.upper_ok && fit.constant_ok;
  return fit;
}

double fiber_second_fundamental_form(const Connection& period_connection) {
  const auto& space = period_connection.space;
  double worst = 0.0;
  for (int s = space.horizontal; s < space.dim(); ++s) {
    for (int t = space.horizontal; t < space.dim(); ++t) {
      for (int i = 0; i < space.horizontal; ++i) {
        worst = std::max(worst, std::abs(period_connection.gamma(s, t, i)));
      }
    }
  }
  return worst;
}

double killing_field_residual(const Connection& period_connection, int s) {
  const auto& space = period_connection.space;
  if (s < 0 || s >= space.fiber()) {
    throw InvalidInput("killing_field_residual: fiber index out of range");
  }
  const int fs = space.horizontal + s;
  const auto& br = period_connection.bracket;
  double worst = 0.0;
  for (int i = 0; i < space.dim(); ++i) {
    for (int j = 0; j < space.dim(); ++j) {
      worst = std::max(worst, std::abs(-br(fs, i, j) - br(fs, j, i)));
    }
  }
  return worst;
}

JacobiSpectrum jacobi_operator(const CurvatureModel& cm, const VectorXd& v) {
  const int n = cm.dim;
  if (v.size() != n) throw InvalidInput("jacobi_operator: direction size mismatch");
  if (std::abs(v.norm() - 1.0) > tol::kIdentity) {
    throw InvalidInput("jacobi_operator: direction must be a unit vector");
  }
  MatrixXd op = MatrixXd::Zero(n, n);  // op(e, d) = <R(e_e, v) v, e_d>
  for (int e = 0; e < n; ++e) {
    for (int b = 0; b < n; ++b) {
      if (v(b) == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        const double vv = v(b) * v(c);
        if (vv == 0.0) continue;
        for (int d = 0; d < n; ++d) op(e, d) += cm.R(e, b, c, d) * vv;
      }
    }
  }
  JacobiSpectrum out;
  out.symmetry_residual = (op - op.transpose()).cwiseAbs().maxCoeff();
  if (out.symmetry_residual > kSymmetryTolerance) {
    throw NumericalError("jacobi_operator: operator is not symmetric (residual " +
                         std::to_string(out.symmetry_residual) + ")");
  }
  Eigen::HouseholderQR<MatrixXd> qr(v);
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
  const MatrixXd perp = q.rightCols(n - 1);
  const MatrixXd restricted = perp.transpose() * (0.5 * (op + op.transpose())) * perp;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(restricted);
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = perp * es.eigenvectors();
  return out;
}

}  // namespace vhs
