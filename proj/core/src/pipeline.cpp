#include "vhs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "vhs/coercivity.hpp"
#include "vhs/errors.hpp"
#include "vhs/geometry.hpp"
#include "vhs/harmonic.hpp"
#include "vhs/identities.hpp"
#include "vhs/radial.hpp"
#include "vhs/random.hpp"
#include "vhs/tolerances.hpp"

namespace vhs {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Independent RNG streams per consumer.
enum Stream : std::uint64_t {
  kSurveyStream = 1,
  kDirectionStream = 2,
  kFormStream = 3,
  kFrameStream = 4,
  kXiStream = 5,
};

constexpr Stage kAllStages[] = {Stage::Algebra,  Stage::Identities, Stage::Curvature,
                                Stage::Fibration, Stage::Harmonic,  Stage::Comparison,
                                Stage::Coercivity};

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const std::vector<double>& v) { return json(v); }

/// Per-direction summary kept instead of full profiles to bound memory.
struct DirectionData {
  std::vector<double> eigenvalues;  // scale-fitted Jacobi eigenvalues
  double symmetry_residual = 0.0;
};

class Runner {
 public:
  Runner(const RunConfig& config, const std::vector<Stage>& stages)
      : cfg_(config),
        t_(config.tol_scale),
        requested_(stages),
        report_(config.spec,
                config.xi ? *config.xi : default_xi(config.spec.compact_rank()), config.seed) {}

  RunArtifacts run() {
    validate(cfg_.spec);
    if (!(cfg_.tol_scale > 0.0)) throw InvalidInput("--tol-scale must be positive");
    for (Stage s : requested_) {
      if (needs_table(s) && !cfg_.spec.table_applicable()) {
        throw InvalidInput(cfg_.spec.name() + ": the " + stage_name(s) +
                           " stage needs the curvature table, whose hypotheses require q >= 2 "
                           "for so(p,2q)");
      }
    }
    if (cfg_.xi && cfg_.xi->size() != cfg_.spec.compact_rank()) {
      throw InvalidInput("xi must have " + std::to_string(cfg_.spec.compact_rank()) +
                         " coefficients (one per maximal torus generator) for " +
                         cfg_.spec.name());
    }

    // Degenerate ξ or an invalid spec surface here as InvalidInput.
    const auto start = Clock::now();
    try {
      con_ = construct(cfg_.spec, cfg_.xi);
    } catch (const InvalidInput&) {
      throw;
    } catch (const std::exception& e) {
      report_.flag("algebra", "construction", "matrix realization of the real form", false);
      report_.set_section("algebra", {{"error", e.what()}});
      return finish();
    }
    construction_seconds_ = seconds_since(start);

    for (Stage s : kAllStages) {
      if (std::find(requested_.begin(), requested_.end(), s) == requested_.end()) continue;
      const auto t0 = Clock::now();
      try {
        run_stage(s);
      } catch (const InvalidInput&) {
        throw;
      } catch (const std::exception& e) {
        report_.flag(stage_name(s), "completed", "stage ran to completion", false);
        report_.set_section(stage_name(s), {{"error", e.what()}});
      }
      double elapsed = seconds_since(t0);
      if (s == Stage::Algebra) elapsed += construction_seconds_;
      report_.add_timing(stage_name(s), elapsed);
    }
    return finish();
  }

 private:
  static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  const StructureTensor& st() const { return con_->structure; }
  const BlockLayout& layout() const { return con_->structure.layout; }

  void run_stage(Stage s) {
    switch (s) {
      case Stage::Algebra: algebra_stage(); break;
      case Stage::Identities: identities_stage(); break;
      case Stage::Curvature: curvature_stage(); break;
      case Stage::Fibration: fibration_stage(); break;
      case Stage::Harmonic: harmonic_stage(); break;
      case Stage::Comparison: comparison_stage(); break;
      case Stage::Coercivity: coercivity_stage(); break;
    }
  }

  // ---- shared, lazily computed data ----

  const CurvatureModel& base_model() {
    if (!base_) base_ = curvature_model(symmetric_base(st()), st());
    return *base_;
  }

  const CurvatureReport& survey() {
    if (!survey_) {
      SurveyConfig sc;
      sc.samples = cfg_.samples;
      sc.restarts = cfg_.restarts;
      sc.seed = make_rng(cfg_.seed, kSurveyStream)();
      survey_ = curvature_survey(base_model(), sc);
    }
    return *survey_;
  }

  const TableFit& fit() {
    if (!fit_) fit_ = fit_table_scale(survey(), cfg_.spec);
    return *fit_;
  }

  const std::vector<DirectionData>& directions() {
    if (!directions_) {
      const auto& cm = base_model();
      const double scale = fit().scale;
      auto rng = make_rng(cfg_.seed, kDirectionStream);
      std::vector<DirectionData> out;
      out.reserve(static_cast<std::size_t>(cfg_.directions));
      for (int i = 0; i < cfg_.directions; ++i) {
        const Eigen::VectorXd v = random_unit_vector(rng, cm.dim);
        const JacobiSpectrum js = jacobi_operator(cm, v);
        DirectionData d;
        for (Eigen::Index k = 0; k < js.eigenvalues.size(); ++k) {
          d.eigenvalues.push_back(scale * js.eigenvalues(k));
        }
        d.symmetry_residual = js.symmetry_residual;
        out.push_back(std::move(d));
      }
      directions_ = std::move(out);
    }
    return *directions_;
  }

  std::vector<double> grid(int factor = 1) const {
    return log_grid(1e-3, 100.0, cfg_.grid_points * factor);
  }

  static std::string direction_label(int i) {
    std::ostringstream os;
    os << "direction_" << std::setw(3) << std::setfill('0') << i;
    return os.str();
  }

  RadialProfile profile(int i, int factor = 1) {
    return build_profile(directions()[static_cast<std::size_t>(i)].eigenvalues, grid(factor),
                         direction_label(i));
  }

  // ---- stages ----

  void algebra_stage() {
    const auto& c = *con_;
    const char* sec = "algebra";
    report_.flag(sec, "dimension", "dim g matches the real form",
                 c.basis.dim == c.spec.dimension());
    report_.below(sec, "closure", "[X_a, X_b] lies in the span of the basis",
                  c.basis.closure_residual, tol::kConstruction * t_);
    report_.above(sec, "independence", "smallest singular value of the basis Gram matrix",
                  c.basis.min_singular_value, tol::kRank);
    report_.below(sec, "defining_condition", "X^T eta + eta X = 0", c.basis.condition_residual,
                  tol::kConstruction * t_);
    report_.below(sec, "theta_invariance", "B(theta X, theta Y) = B(X, Y)",
                  theta_invariance_residual(c.split), tol::kIdentity * t_);
    report_.flag(sec, "cartan_dimensions", "dim m = dim G/K and dim k = dim g - dim m",
                 layout().n == c.spec.base_dimension() &&
                     layout().r == c.spec.dimension() - c.spec.base_dimension());
    report_.flag(sec, "fiber_nonempty", "r1 + r2 + 1 < r (v is a proper subalgebra of k)",
                 c.canonical.r1 + c.canonical.r2 + 1 < layout().r && layout().fiber > 0);
    report_.below(sec, "killing_normalization", "B = diag(+1 on m, -1 on k) in the canonical basis",
                  c.canonical.gram_residual, tol::kIdentity * t_);
    report_.below(sec, "bracket_expansion", "brackets of the canonical basis re-expand exactly",
                  st().expansion_residual, tol::kIdentity * t_);
    report_.below(sec, "block_structure", "[k,k] in k, [k,m] in m, [m,m] in k",
                  forbidden_block_residual(st()), tol::kIdentity * t_);

    algebra_document_ = algebra_to_json(c);
    json payload = algebra_document_;
    payload.erase("canonical_basis");
    payload.erase("schema");
    report_.set_section(sec, std::move(payload));
  }

  void identities_stage() {
    const IdentityReport ir = verify_identities(st(), tol::kIdentityReport * t_);
    json checks = json::array();
    for (const auto& check : ir.checks) {
      report_.below("identities", check.name, check.formula, check.residual, check.tolerance);
      checks.push_back({{"name", check.name}, {"residual", check.residual}});
    }
    report_.set_section("identities", {{"basis_hash", ir.basis_hash}, {"checks", checks}});
  }

  void curvature_stage() {
    const char* sec = "curvature";
    const auto& cm = base_model();
    report_.below(sec, "curvature_symmetries",
                  "R(a,b,c,d) = -R(b,a,c,d) = -R(a,b,d,c) = R(c,d,a,b)", cm.symmetry_residual,
                  tol::kIdentityReport * t_);
    report_.below(sec, "first_bianchi", "cyclic sum R(a,b,c,d) + R(b,c,a,d) + R(c,a,b,d) = 0",
                  cm.bianchi_residual, tol::kIdentityReport * t_);
    const auto& sv = survey();
    report_.below(sec, "einstein", "Ric = rho g", sv.ricci.einstein_residual, 1e-8 * t_);
    report_.above(sec, "negative_minimum", "some plane has K < 0", -sv.min_k, 0.0);
    const auto& f = fit();
    report_.below(sec, "max_sectional", "max K <= 0 after the scale fit", f.fitted_max_k,
                  1e-6 * t_ + std::numeric_limits<double>::min());
    report_.below(sec, "ricci_vs_table", "fitted Ricci eigenvalue matches the table (relative)",
                  f.ricci_rel_error, 0.01 * t_);
    report_.below(sec, "ratio_vs_table", "min K / rho matches the table ratio (relative)",
                  f.ratio_rel_error, 0.02 * t_);
    if (f.row.constant_curvature) {
      report_.below(sec, "constant_curvature", "sampled K has zero spread after the fit",
                    f.fitted_sample_stddev, 1e-6 * t_);
    } else {
      report_.below(sec, "upper_bound_vs_table", "fitted max K matches the table upper bound",
                    f.upper_rel_error, 0.02 * t_);
    }
    table_csv_ = table_csv_header() + table_csv_row(f, sv);
    report_.set_section(sec, {{"survey", curvature_to_json(sv)}, {"table", table_fit_to_json(f)}});
  }

  struct FibrationNumbers {
    double second_fundamental_form = 0.0;
    double killing = 0.0;
    double reductive = 0.0;
    double torsion = 0.0;
    double metric = 0.0;
    double symmetries = 0.0;
    double bianchi = 0.0;
  };

  static FibrationNumbers fibration_numbers(const StructureTensor& s) {
    FibrationNumbers out;
    const Connection conn = koszul_connection(period_domain(s), s);
    out.second_fundamental_form = fiber_second_fundamental_form(conn);
    for (int k = 0; k < conn.space.fiber(); ++k) {
      out.killing = std::max(out.killing, killing_field_residual(conn, k));
    }
    out.reductive = conn.reductive_residual;
    const int d = conn.space.dim();
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          out.torsion = std::max(out.torsion, std::abs(conn.gamma(a, b, c) - conn.gamma(b, a, c) -
                                                       conn.bracket(a, b, c)));
          out.metric = std::max(out.metric, std::abs(conn.gamma(a, b, c) + conn.gamma(a, c, b)));
        }
      }
    }
    const CurvatureModel cm = curvature_tensor(conn, s);
    out.symmetries = cm.symmetry_residual;
    out.bianchi = cm.bianchi_residual;
    return out;
  }

  void fibration_stage() {
    const char* sec = "fibration";
    std::vector<Eigen::VectorXd> xis = {con_->xi_coefficients};
    auto rng = make_rng(cfg_.seed, kXiStream);
    for (int i = 0; i < cfg_.random_xi; ++i) {
      xis.push_back(random_uniform(rng, cfg_.spec.compact_rank(), 0.5, 3.0));
    }
    FibrationNumbers worst;
    json per_xi = json::array();
    for (std::size_t i = 0; i < xis.size(); ++i) {
      std::optional<Construction> local;
      if (i > 0) local = construct(cfg_.spec, xis[i]);
      const StructureTensor& s = i == 0 ? st() : local->structure;
      const FibrationNumbers f = fibration_numbers(s);
      worst.second_fundamental_form =
          std::max(worst.second_fundamental_form, f.second_fundamental_form);
      worst.killing = std::max(worst.killing, f.killing);
      worst.reductive = std::max(worst.reductive, f.reductive);
      worst.torsion = std::max(worst.torsion, f.torsion);
      worst.metric = std::max(worst.metric, f.metric);
      worst.symmetries = std::max(worst.symmetries, f.symmetries);
      worst.bianchi = std::max(worst.bianchi, f.bianchi);
      per_xi.push_back({{"xi", to_json(xis[i])},
                        {"fiber_dimension", s.layout.fiber},
                        {"second_fundamental_form", f.second_fundamental_form},
                        {"killing", f.killing},
                        {"reductive", f.reductive},
                        {"torsion", f.torsion},
                        {"metric_compatibility", f.metric},
                        {"curvature_symmetries", f.symmetries},
                        {"first_bianchi", f.bianchi}});
    }
    report_.below(sec, "second_fundamental_form", "fibers K/V are totally geodesic in G/V",
                  worst.second_fundamental_form, tol::kIdentity * t_);
    report_.below(sec, "killing_fields", "fiber vector fields satisfy L_X g = 0",
                  worst.killing, tol::kIdentity * t_);
    report_.below(sec, "reductive", "[v, complement] lies in the complement", worst.reductive,
                  tol::kIdentity * t_);
    report_.below(sec, "torsion_free", "nabla_X Y - nabla_Y X = [X, Y]_complement",
                  worst.torsion, tol::kIdentity * t_);
    report_.below(sec, "metric_compatible", "<nabla_a e_b, e_c> + <nabla_a e_c, e_b> = 0",
                  worst.metric, tol::kIdentity * t_);
    report_.below(sec, "curvature_symmetries", "curvature symmetries on G/V", worst.symmetries,
                  tol::kIdentityReport * t_);
    report_.below(sec, "first_bianchi", "first Bianchi identity on G/V", worst.bianchi,
                  tol::kIdentityReport * t_);
    report_.set_section(sec, {{"xi_choices", per_xi}});
  }

  void harmonic_stage() {
    const char* sec = "harmonic";
    const auto space = invariant_harmonic_space(st());
    report_.flag(sec, "invariant_solutions", "no nonzero constant-coefficient closed 1-form",
                 space.dimension == 0);
    report_.above(sec, "constraint_conditioning", "smallest singular value of the constraint map",
                  space.min_singular_value, 0.1);

    const int n = layout().n;
    const int fiber = layout().fiber;
    auto rng = make_rng(cfg_.seed, kFormStream);
    const Tensor3 control = symmetrized_control(st().c_low);
    double worst = 0.0;
    double control_max = 0.0;
    for (int k = 0; k < cfg_.random_forms; ++k) {
      FormCoefficients u{random_uniform(rng, n, -1.0, 1.0), random_uniform(rng, fiber, -1.0, 1.0)};
      for (int s = 0; s < fiber; ++s) {
        worst = std::max(worst, horizontality_residual(st(), u, s));
        control_max = std::max(control_max, horizontality_residual(control, layout(), u, s));
      }
    }
    report_.below(sec, "horizontality", "sum_{i,j} c_{j s i} u_i u_j = 0 for every fiber index s",
                  worst, 1e-12 * t_);
    report_.at_least(sec, "negative_control",
                     "symmetrized structure tensor breaks the horizontality identity",
                     control_max, 0.01);

    double superposition = 0.0;
    const int cols = static_cast<int>(space.constraint.cols());
    for (int k = 0; k < 10; ++k) {
      const Eigen::VectorXd a = random_uniform(rng, cols, -1.0, 1.0);
      const Eigen::VectorXd b = random_uniform(rng, cols, -1.0, 1.0);
      const double alpha = random_uniform(rng, 1, -2.0, 2.0)(0);
      const double beta = random_uniform(rng, 1, -2.0, 2.0)(0);
      const Eigen::VectorXd lhs = harmonic_constraint(space, alpha * a + beta * b);
      const Eigen::VectorXd rhs =
          alpha * harmonic_constraint(space, a) + beta * harmonic_constraint(space, b);
      superposition = std::max(superposition, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report_.below(sec, "superposition", "the constraint map is linear", superposition,
                  1e-12 * t_);

    const auto vc = vertical_constancy_check(st(), cfg_.spec.name(), space.dimension);
    json entries = json::array();
    for (const auto& e : vc.entries) {
      entries.push_back({{"statement", e.statement}, {"status", e.status}, {"holds", e.holds}});
      if (e.status == "assumption") report_.add_assumption(e.statement);
    }
    report_.flag(sec, "vertical_constancy", "u_s constant, |w|^2 integrable, Vol = inf => u_s = 0",
                 vc.pass);
    report_.add_assumption(
        "L2 cohomology classes are represented by L2-harmonic forms (Hodge theory on the "
        "complete manifold)");
    report_.set_section(sec, {{"solution_dimension", space.dimension},
                              {"singular_values", to_json(space.singular_values)},
                              {"horizontality_max", worst},
                              {"negative_control_max", control_max},
                              {"random_forms", cfg_.random_forms},
                              {"vertical_constancy", entries}});
  }

  void comparison_stage() {
    const char* sec = "comparison";
    const auto& dirs = directions();
    const auto base_grid = grid();
    report_.add_assumption(
        "the symmetric base is simply connected and nonpositively curved, so the distance "
        "from a point is smooth away from that point");

    // Closed form against the independent Riccati integration.
    std::vector<double> ks = {0.0, -0.5, -1.0, -2.0, -4.0};
    for (double k : dirs.front().eigenvalues) {
      const double kk = std::min(k, 0.0);
      if (std::none_of(ks.begin(), ks.end(), [&](double x) { return std::abs(x - kk) < 1e-9; })) {
        ks.push_back(kk);
      }
    }
    double oracle = 0.0;
    for (double k : ks) {
      const auto numeric = riccati_oracle(k, base_grid);
      for (std::size_t i = 0; i < base_grid.size(); ++i) {
        oracle = std::max(oracle, std::abs(numeric[i] - radial_hessian(k, base_grid[i])));
      }
    }
    report_.below(sec, "riccati_oracle", "mu coth(mu r) solves lambda' = -K - lambda^2", oracle,
                  1e-8 * t_);

    double max_eigen = -std::numeric_limits<double>::infinity();
    double min_eigen = std::numeric_limits<double>::infinity();
    double jacobi_sym = 0.0;
    double min_a = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    double min_r_lambda = std::numeric_limits<double>::infinity();
    double min_comparison_excess = std::numeric_limits<double>::infinity();
    double bound = 0.0;
    for (int i = 0; i < static_cast<int>(dirs.size()); ++i) {
      const auto& d = dirs[static_cast<std::size_t>(i)];
      for (double k : d.eigenvalues) {
        max_eigen = std::max(max_eigen, k);
        min_eigen = std::min(min_eigen, k);
      }
      jacobi_sym = std::max(jacobi_sym, d.symmetry_residual);
      const RadialProfile p = profile(i);
      for (int s = 0; s < p.tangential(); ++s) {
        const ASResult a = a_s_profile(p, s, 1e-6 * t_);
        min_a = std::min(min_a, a.min_value);
        min_margin = std::min(min_margin, a.min_differential_margin);
      }
      const ComparisonResult c = comparison_check(p);
      min_r_lambda = std::min(min_r_lambda, c.min_r_lambda);
      min_comparison_excess = std::min(min_comparison_excess, c.min_value - c.bound);
      bound = c.bound;
      if (i < cfg_.exported_profiles) profiles_.emplace_back(p.label, profile_csv(p));
    }
    report_.below(sec, "nonpositive_jacobi", "radial sectional curvatures K_i <= 0", max_eigen,
                  1e-9 * t_ + std::numeric_limits<double>::min());
    report_.below(sec, "jacobi_symmetry", "w -> R(w, v) v is symmetric", jacobi_sym,
                  tol::kIdentityReport * t_);
    report_.at_least(sec, "r_lambda", "r lambda(r) >= 1", min_r_lambda, 1.0 - 1e-9 * t_);
    report_.above(sec, "a_s_positive", "A_s(r) = sum_t lambda_t - 2 lambda_s > 0", min_a, 0.0);
    report_.at_least(sec, "a_s_differential", "dA_s/dr + A_s laplacian(r) >= 0", min_margin,
                     -1e-6 * t_);
    report_.at_least(sec, "laplacian_comparison", "(1/2) sum r lambda - 1/2 >= (n - 2)/2",
                     min_comparison_excess, -1e-9 * t_);

    const auto& f = fit();
    const double a2 = -f.fitted_min_k;
    const double b2 = -f.fitted_ricci;
    ComparisonParams params{a2, b2, cfg_.spec.base_dimension()};
    validate(params);
    const double gap = ricci_gap(f.fitted_min_k, f.fitted_ricci);
    report_.at_least(sec, "ricci_gap", "b^2 - 2 a^2 >= 0", gap, -1e-6 * t_);

    report_.set_section(sec, {{"directions", static_cast<int>(dirs.size())},
                              {"grid", {{"lo", base_grid.front()},
                                        {"hi", base_grid.back()},
                                        {"points", static_cast<int>(base_grid.size())}}},
                              {"a2", a2},
                              {"b2", b2},
                              {"n", params.n},
                              {"ricci_gap", gap},
                              {"oracle_curvatures", to_json(ks)},
                              {"oracle_max_error", oracle},
                              {"jacobi_min", min_eigen},
                              {"jacobi_max", max_eigen},
                              {"first_direction_eigenvalues", to_json(dirs.front().eigenvalues)},
                              {"min_r_lambda", min_r_lambda},
                              {"min_a_s", min_a},
                              {"min_differential_margin", min_margin},
                              {"laplacian_bound", bound},
                              {"min_laplacian_excess", min_comparison_excess}});
  }

  static CoercivityResult combine(const std::optional<CoercivityResult>& acc,
                                  const CoercivityResult& next) {
    if (!acc) return next;
    CoercivityResult out = next.c0 < acc->c0 ? next : *acc;
    out.radial_min = std::min(acc->radial_min, next.radial_min);
    out.tangential_min = std::min(acc->tangential_min, next.tangential_min);
    out.bound = std::min(acc->bound, next.bound);
    out.pass = acc->pass && next.pass;
    out.falsified = acc->falsified || next.falsified;
    return out;
  }

  void coercivity_stage() {
    const char* sec = "coercivity";
    const auto& dirs = directions();
    const int n = cfg_.spec.base_dimension();

    // Dual-route pairing on random frames in random rotated bases.
    auto rng = make_rng(cfg_.seed, kFrameStream);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(dirs.size()) - 1);
    std::uniform_real_distribution<double> log_r(std::log(1e-3), std::log(100.0));
    double dual = 0.0;
    double dual_abs = 0.0;
    double divergence = 0.0;
    double scaling = 0.0;
    for (int k = 0; k < cfg_.random_frames; ++k) {
      const auto& d = dirs[static_cast<std::size_t>(pick(rng))];
      StressEnergyFrame frame;
      frame.r = std::exp(log_r(rng));
      frame.lambda.resize(n - 1);
      for (int t = 0; t < n - 1; ++t) {
        frame.lambda(t) = radial_hessian(std::min(d.eigenvalues[static_cast<std::size_t>(t)], 0.0),
                                         frame.r);
      }
      const Eigen::VectorXd u = random_uniform(rng, n, -1.0, 1.0);
      frame.u_r = u(0);
      frame.u_t = u.tail(n - 1);
      frame.rotation = random_orthogonal(rng, n);
      const PairingResult pr = stress_energy_pairing(frame);
      const double magnitude = std::max(1.0, frame.norm_squared() * frame.divergence());
      dual = std::max(dual, pr.difference / magnitude);
      dual_abs = std::max(dual_abs, pr.difference);
      divergence = std::max(divergence, std::abs(frame.covariant_derivative().trace() -
                                                 frame.divergence()) /
                                            std::max(1.0, frame.divergence()));
      for (double scale : {2.0, 10.0}) {
        StressEnergyFrame scaled = frame;
        scaled.u_r *= scale;
        scaled.u_t *= scale;
        const double lhs = stress_energy_pairing(scaled).grouped;
        scaling = std::max(scaling, std::abs(lhs - scale * scale * pr.grouped) /
                                        (scale * scale * magnitude));
      }
    }
    report_.below(sec, "dual_route",
                  "(1/2)|w|^2 div X - <w (.) w, grad X> equals the grouped expansion "
                  "(relative to |w|^2 div X)",
                  dual, 1e-12 * t_);
    report_.below(sec, "divergence", "div X = 1 + r sum lambda", divergence, 1e-12 * t_);
    report_.below(sec, "quadratic_scaling", "pairing scales by t^2 under w -> t w", scaling,
                  1e-12 * t_);

    std::optional<CoercivityResult> coarse;
    std::optional<CoercivityResult> fine;
    for (int i = 0; i < static_cast<int>(dirs.size()); ++i) {
      coarse = combine(coarse, coercivity_constant({profile(i)}, 1e-6 * t_));
      fine = combine(fine, coercivity_constant({profile(i, 2)}, 1e-6 * t_));
    }
    const double c0 = coarse->c0;
    report_.above(sec, "c0_positive", "the pairing is bounded below by C0 |w|^2 with C0 > 0", c0,
                  0.0);
    report_.at_least(sec, "c0_bound", "C0 >= min((n - 2)/2, 1/2)", c0,
                     coarse->bound - 1e-6 * t_);
    report_.below(sec, "grid_convergence", "C0 is stable under doubling the grid",
                  std::abs(fine->c0 - c0), 1e-6 * t_);
    const bool constant = curvature_table_row(cfg_.spec).constant_curvature;
    if (constant) {
      report_.below(sec, "c0_constant_curvature", "C0 = (n - 2)/2 for constant curvature",
                    std::abs(c0 - 0.5 * (n - 2)), 1e-6 * t_);
    }

    const RadialProfile first = profile(0);
    const double r0 = coercive_radius(c0, first);
    report_.flag(sec, "coercive_radius", "R0 with integrated coercivity >= 1 lies on the grid",
                 std::isfinite(r0));
    json growth_json;
    if (std::isfinite(r0)) {
      growth_ = growth_report(c0, r0);
      double partial = 0.0;
      for (std::size_t k = 0; k < growth_->partial_integrals.size(); ++k) {
        const double expected = 2.0 * c0 * static_cast<double>(k + 1) * std::numbers::ln10;
        partial = std::max(partial, std::abs(growth_->partial_integrals[k] - expected));
      }
      report_.below(sec, "growth_partial_integrals", "int_{R0}^{R} 2C/r dr = 2C ln(R/R0)",
                    partial, 1e-12 * t_);
      report_.flag(sec, "growth_conclusive", "the boundary lower bound 2C/R is not vacuous",
                   growth_->conclusive);
      growth_json = {{"c", growth_->c},
                     {"r0", growth_->r0},
                     {"radii", growth_->radii},
                     {"partial_integrals", growth_->partial_integrals},
                     {"conclusive", growth_->conclusive},
                     {"chain", growth_->chain},
                     {"conclusion", growth_->conclusion}};
    }
    report_.add_assumption(
        "the integral stress-energy identity over bounded domains holds for smooth L2 forms");
    report_.add_assumption(
        "an invariant harmonic 1-form is annihilated by the Lie derivative along fiber Killing "
        "fields");
    report_.set_section(sec, {{"c0", c0},
                              {"radial_min", coarse->radial_min},
                              {"tangential_min", coarse->tangential_min},
                              {"argmin_r", coarse->argmin_r},
                              {"bound", coarse->bound},
                              {"falsified", coarse->falsified},
                              {"c0_refined_grid", fine->c0},
                              {"random_frames", cfg_.random_frames},
                              {"dual_route_max_relative", dual},
                              {"dual_route_max_absolute", dual_abs},
                              {"growth", growth_json}});
  }

  // ---- assembly ----

  std::string summary() const {
    std::ostringstream os;
    os << "vhsverify " << VHS_VERSION << "  " << cfg_.spec.name() << "  "
       << cfg_.spec.space_label() << "  seed " << cfg_.seed << '\n';
    std::map<std::string, std::pair<int, int>> counts;
    for (const auto& r : report_.records()) {
      auto& c = counts[r.section];
      ++c.second;
      if (r.pass) ++c.first;
    }
    for (const auto& t : report_.timings()) {
      const auto c = counts[t.section];
      os << "  " << std::left << std::setw(12) << t.section << std::right << std::setw(3)
         << c.first << "/" << c.second << " checks passed  " << std::fixed << std::setprecision(2)
         << t.seconds << " s" << std::defaultfloat << std::setprecision(6) << '\n';
    }
    if (fit_) {
      os << "  table: " << fit_->row.type << "  fitted K in [" << fit_->fitted_min_k << ", "
         << fit_->fitted_max_k << "], Ric " << fit_->fitted_ricci << " (table " << fit_->row.ricci
         << ")\n";
    }
    if (growth_) {
      os << "  growth:\n";
      for (const auto& line : growth_->chain) os << "    " << line << '\n';
      for (std::size_t k = 0; k < growth_->radii.size(); ++k) {
        os << "    R = " << growth_->radii[k] << ": int |w|^2 >= " << growth_->partial_integrals[k]
           << '\n';
      }
      os << "    " << growth_->conclusion << '\n';
    }
    for (const auto& r : report_.records()) {
      if (!r.pass) {
        os << "  FAIL " << r.section << "/" << r.name << ": value " << r.value << ' '
           << r.relation << ' ' << r.tolerance << "  (" << r.anchor << ")\n";
      }
    }
    os << "overall: " << (report_.overall_pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
  }

  RunArtifacts finish() {
    report_.set_section("config", config_to_json(cfg_));
    RunArtifacts out{report_, table_csv_, profiles_, algebra_document_, summary()};
    return out;
  }

  RunConfig cfg_;
  double t_;
  std::vector<Stage> requested_;
  VerificationReport report_;
  std::optional<Construction> con_;
  double construction_seconds_ = 0.0;
  std::optional<CurvatureModel> base_;
  std::optional<CurvatureReport> survey_;
  std::optional<TableFit> fit_;
  std::optional<std::vector<DirectionData>> directions_;
  std::optional<GrowthReport> growth_;
  std::string table_csv_;
  std::vector<std::pair<std::string, std::string>> profiles_;
  json algebra_document_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Algebra: return "algebra";
    case Stage::Identities: return "identities";
    case Stage::Curvature: return "curvature";
    case Stage::Fibration: return "fibration";
    case Stage::Harmonic: return "harmonic";
    case Stage::Comparison: return "comparison";
    case Stage::Coercivity: return "coercivity";
  }
  return "unknown";
}

std::vector<Stage> stages_for(const std::string& subcommand) {
  if (subcommand == "verify") return {std::begin(kAllStages), std::end(kAllStages)};
  for (Stage s : kAllStages) {
    if (subcommand == stage_name(s)) return {s};
  }
  throw InvalidInput("unknown subcommand '" + subcommand + "'");
}

bool needs_table(Stage stage) {
  return stage == Stage::Curvature || stage == Stage::Comparison || stage == Stage::Coercivity;
}

RunArtifacts run_verification(const RunConfig& config, const std::vector<Stage>& stages) {
  return Runner(config, stages).run();
}

RunArtifacts run_full_verification(const RunConfig& config) {
  return run_verification(config, stages_for("verify"));
}

void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "report.json", artifacts.report.dump() + "\n");
  json timings = json::object();
  for (const auto& t : artifacts.report.timings()) timings[t.section] = t.seconds;
  write_text(out_dir / "timings.json", timings.dump(2) + "\n");
  if (!artifacts.algebra_document.is_null()) {
    write_text(out_dir / "algebra.json", artifacts.algebra_document.dump(2) + "\n");
  }
  if (!artifacts.table_csv.empty()) write_text(out_dir / "table1.csv", artifacts.table_csv);
  if (!artifacts.profiles.empty()) {
    std::filesystem::create_directories(out_dir / "profiles");
    for (const auto& [stem, csv] : artifacts.profiles) {
      write_text(out_dir / "profiles" / (stem + ".csv"), csv);
    }
  }
}

}  // namespace vhs
