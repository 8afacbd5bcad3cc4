#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "vhs/errors.hpp"
#include "vhs/random.hpp"

namespace vhs {
namespace {

using testing::base_model;
using testing::built;

class GeometryTest : public ::testing::TestWithParam<AlgebraSpec> {};

// On a symmetric space R(X, Y)Z = -[[X, Y], Z], evaluated with matrices.
TEST_P(GeometryTest, SymmetricSpaceCurvatureFromDoubleBrackets) {
  const auto& c = built(GetParam());
  const auto& cm = base_model(GetParam());
  const auto& x = c.canonical.X;
  const int n = c.canonical.layout.n;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Eigen::MatrixXd ab =
          testing::bracket(x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]);
      for (int cc = 0; cc < n; ++cc) {
        const Eigen::VectorXd coords =
            testing::coordinates(x, -testing::bracket(ab, x[static_cast<std::size_t>(cc)]));
        // B = +1 on m, so <W, X_d> is the X_d coordinate.
        for (int d = 0; d < n; ++d) {
          worst = std::max(worst, std::abs(cm.R(a, b, cc, d) - coords(d)));
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST_P(GeometryTest, KillingMetricGivesRicciMinusHalf) {
  const RicciSummary rs = ricci_summary(base_model(GetParam()));
  EXPECT_NEAR(rs.rho, -0.5, 1e-12);
  EXPECT_LT(rs.einstein_residual, 1e-12);
}

TEST_P(GeometryTest, CurvatureSymmetriesAndBianchi) {
  const auto& cm = base_model(GetParam());
  EXPECT_LT(cm.symmetry_residual, 1e-12);
  EXPECT_LT(cm.bianchi_residual, 1e-12);
}

TEST_P(GeometryTest, SectionalCurvatureIsNonpositiveOnRandomPlanes) {
  const auto& cm = base_model(GetParam());
  auto rng = make_rng(5, 1);
  for (int k = 0; k < 500; ++k) {
    Eigen::VectorXd x = random_unit_vector(rng, cm.dim);
    Eigen::VectorXd y = random_gaussian(rng, cm.dim);
    y -= y.dot(x) * x;
    y.normalize();
    const double direct = sectional_curvature(cm, x, y);
    EXPECT_LE(direct, 1e-12);
    EXPECT_NEAR(direct, sectional_curvature_bivector(cm, x, y), 1e-12);
  }
}

TEST_P(GeometryTest, ScaleCovariance) {
  const auto& unit = base_model(GetParam());
  auto rng = make_rng(6, 1);
  Eigen::VectorXd x = random_unit_vector(rng, unit.dim);
  Eigen::VectorXd y = random_gaussian(rng, unit.dim);
  y -= y.dot(x) * x;
  y.normalize();
  const double k1 = sectional_curvature(unit, x, y);
  const double rho1 = ricci_summary(unit).rho;
  for (double s : {0.5, 2.0, 7.0}) {
    const auto& scaled = base_model(GetParam(), s);
    EXPECT_NEAR(sectional_curvature(scaled, x, y), k1 / s, 1e-12);
    EXPECT_NEAR(ricci_summary(scaled).rho, rho1 / s, 1e-12);
  }
}

// Flat totally geodesic planes: the abelian subspace has K = 0.
TEST_P(GeometryTest, AbelianPlanesAreFlat) {
  const auto& cm = base_model(GetParam());
  const Eigen::MatrixXd a = abelian_subspace(cm, 3);
  const int rank = GetParam().family == Family::SO ? std::min(GetParam().param1, 2 * GetParam().param2)
                                                   : std::min(GetParam().param1, GetParam().param2);
  ASSERT_EQ(a.cols(), rank);
  if (rank < 2) return;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), 2);
  EXPECT_NEAR(sectional_curvature(cm, q.col(0), q.col(1)), 0.0, 1e-12);
  EXPECT_LT(bracket_norm_squared(cm, q.col(0), q.col(1)), 1e-20);
}

// Jacobi eigenvalues are the curvatures of the planes (v, eigenvector).
TEST_P(GeometryTest, JacobiEigenvaluesAreSectionalCurvatures) {
  const auto& cm = base_model(GetParam());
  auto rng = make_rng(8, 1);
  const Eigen::VectorXd v = random_unit_vector(rng, cm.dim);
  const JacobiSpectrum js = jacobi_operator(cm, v);
  ASSERT_EQ(js.eigenvalues.size(), cm.dim - 1);
  for (Eigen::Index i = 0; i < js.eigenvalues.size(); ++i) {
    const Eigen::VectorXd w = js.eigenvectors.col(i);
    EXPECT_NEAR(w.dot(v), 0.0, 1e-12);
    EXPECT_NEAR(sectional_curvature(cm, v, w), js.eigenvalues(i), 1e-12);
    EXPECT_LE(js.eigenvalues(i), 1e-12);
  }
}

TEST_P(GeometryTest, FibersAreTotallyGeodesicAndKilling) {
  const auto& st = built(GetParam()).structure;
  const Connection conn = koszul_connection(period_domain(st), st);
  EXPECT_LT(fiber_second_fundamental_form(conn), 1e-10);
  for (int s = 0; s < conn.space.fiber(); ++s) EXPECT_LT(killing_field_residual(conn, s), 1e-10);
  EXPECT_LT(conn.reductive_residual, 1e-10);
}

TEST_P(GeometryTest, PeriodDomainConnectionIsLeviCivita) {
  const auto& st = built(GetParam()).structure;
  const Connection conn = koszul_connection(period_domain(st, 2.5), st);
  const int d = conn.space.dim();
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        EXPECT_NEAR(conn.gamma(a, b, c) + conn.gamma(a, c, b), 0.0, 1e-12);
        EXPECT_NEAR(conn.gamma(a, b, c) - conn.gamma(b, a, c), conn.bracket(a, b, c), 1e-12);
      }
    }
  }
  const CurvatureModel cm = curvature_tensor(conn, st);
  EXPECT_LT(cm.bianchi_residual, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(SixAlgebras, GeometryTest, ::testing::ValuesIn(testing::six_algebras()),
                         testing::spec_name);

TEST(Jacobi, SoOneFourAfterFitIsMinusOne) {
  const auto& cm = base_model(AlgebraSpec::so(1, 2), 1.0 / 6.0);
  auto rng = make_rng(9, 0);
  for (int k = 0; k < 5; ++k) {
    const JacobiSpectrum js = jacobi_operator(cm, random_unit_vector(rng, cm.dim));
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(js.eigenvalues(i), -1.0, 1e-12);
  }
}

TEST(Jacobi, SoTwoFourHasFlatDirectionAndRangeTwo) {
  const auto& cm = base_model(AlgebraSpec::so(2, 2), 1.0 / 8.0);
  auto rng = make_rng(10, 0);
  const JacobiSpectrum js = jacobi_operator(cm, random_unit_vector(rng, cm.dim));
  EXPECT_GE(js.eigenvalues.minCoeff(), -2.0 - 1e-12);
  EXPECT_NEAR(js.eigenvalues.maxCoeff(), 0.0, 1e-10);
}

TEST(Jacobi, RejectsNonUnitVector) {
  const auto& cm = base_model(AlgebraSpec::so(1, 2));
  EXPECT_THROW(jacobi_operator(cm, Eigen::VectorXd::Constant(cm.dim, 1.0)), InvalidInput);
}

TEST(Sectional, RejectsNonOrthonormalPair) {
  const auto& cm = base_model(AlgebraSpec::so(1, 2));
  const Eigen::VectorXd x = Eigen::VectorXd::Unit(cm.dim, 0);
  EXPECT_THROW(sectional_curvature(cm, x, x), InvalidInput);
}

TEST(Sectional, HyperbolicBaseIsConstant) {
  const auto& cm = base_model(AlgebraSpec::so(1, 2));
  auto rng = make_rng(12, 0);
  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd x = random_unit_vector(rng, cm.dim);
    Eigen::VectorXd y = random_gaussian(rng, cm.dim);
    y -= y.dot(x) * x;
    y.normalize();
    EXPECT_NEAR(sectional_curvature(cm, x, y), -1.0 / 6.0, 1e-12);
  }
}

TEST(Table, RowsForEachFamily) {
  const CurvatureTableRow so14 = curvature_table_row(AlgebraSpec::so(1, 2));
  EXPECT_TRUE(so14.constant_curvature);
  EXPECT_EQ(so14.k_lower, -1.0);
  EXPECT_EQ(so14.ricci, -3.0);
  const CurvatureTableRow so34 = curvature_table_row(AlgebraSpec::so(3, 2));
  EXPECT_EQ(so34.k_lower, -2.0);
  EXPECT_EQ(so34.k_upper, 0.0);
  EXPECT_EQ(so34.ricci, -5.0);
  const CurvatureTableRow sp11 = curvature_table_row(AlgebraSpec::sp(1, 1));
  EXPECT_TRUE(sp11.constant_curvature);
  EXPECT_EQ(sp11.k_lower, -4.0);
  EXPECT_EQ(sp11.ricci, -12.0);
  const CurvatureTableRow sp12 = curvature_table_row(AlgebraSpec::sp(1, 2));
  EXPECT_EQ(sp12.k_lower, -4.0);
  EXPECT_EQ(sp12.k_upper, -1.0);
  EXPECT_EQ(sp12.ricci, -16.0);
  const CurvatureTableRow sp22 = curvature_table_row(AlgebraSpec::sp(2, 2));
  EXPECT_EQ(sp22.k_upper, 0.0);
  EXPECT_EQ(sp22.ricci, -20.0);
  EXPECT_THROW(curvature_table_row(AlgebraSpec::so(1, 1)), InvalidInput);
}

// Reduced survey; the full-size survey runs in the acceptance suite.
class SurveyTest : public ::testing::TestWithParam<AlgebraSpec> {};

TEST_P(SurveyTest, ReducedSurveyReproducesTable) {
  SurveyConfig sc;
  sc.samples = 5000;
  sc.restarts = 10;
  sc.seed = 21;
  const CurvatureReport report = curvature_survey(base_model(GetParam()), sc);
  const TableFit fit = fit_table_scale(report, GetParam());
  EXPECT_TRUE(fit.pass) << fit.ricci_rel_error << ' ' << fit.ratio_rel_error;
  EXPECT_LT(fit.ricci_rel_error, 0.01);
  EXPECT_LT(fit.ratio_rel_error, 0.02);
  EXPECT_LE(fit.fitted_max_k, 1e-6);
}

TEST_P(SurveyTest, SurveyIsDeterministic) {
  SurveyConfig sc;
  sc.samples = 2000;
  sc.restarts = 4;
  sc.seed = 5;
  const CurvatureReport a = curvature_survey(base_model(GetParam()), sc);
  const CurvatureReport b = curvature_survey(base_model(GetParam()), sc);
  EXPECT_EQ(a.min_k, b.min_k);
  EXPECT_EQ(a.max_k, b.max_k);
  EXPECT_EQ(a.sample_mean, b.sample_mean);
}

INSTANTIATE_TEST_SUITE_P(SixAlgebras, SurveyTest, ::testing::ValuesIn(testing::six_algebras()),
                         testing::spec_name);

}  // namespace
}  // namespace vhs
