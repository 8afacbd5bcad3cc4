#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "vhs/errors.hpp"
#include "vhs/radial.hpp"
#include "vhs/random.hpp"

namespace vhs {
namespace {

TEST(RadialHessian, ClosedFormValues) {
  EXPECT_NEAR(radial_hessian(-1.0, 2.0), 1.0373147207275481, 1e-15);
  EXPECT_NEAR(radial_hessian(-1.0, 1.0), 1.3130352854993312, 1e-15);
  EXPECT_DOUBLE_EQ(radial_hessian(0.0, 4.0), 0.25);
  EXPECT_NEAR(radial_hessian(-4.0, 1.0), 2.0 / std::tanh(2.0), 1e-15);
  EXPECT_THROW(radial_hessian(0.5, 1.0), InvalidInput);
  EXPECT_THROW(radial_hessian(-1.0, 0.0), InvalidInput);
}

// Series branch and coth branch meet continuously.
TEST(RadialHessian, SmallArgumentBranchIsContinuous) {
  for (double k : {-0.5, -1.0, -4.0}) {
    const double mu = std::sqrt(-k);
    const double r_below = 1e-4 / mu * (1.0 - 1e-9);
    const double r_above = 1e-4 / mu * (1.0 + 1e-9);
    EXPECT_NEAR(radial_hessian(k, r_below) * r_below, radial_hessian(k, r_above) * r_above, 1e-15);
  }
}

TEST(RadialHessian, RLambdaAtLeastOneAndDecreasing) {
  auto rng = make_rng(31, 0);
  std::uniform_real_distribution<double> kdist(-4.0, 0.0);
  std::uniform_real_distribution<double> logr(std::log(1e-3), std::log(100.0));
  for (int i = 0; i < 2000; ++i) {
    const double k = kdist(rng);
    const double r = std::exp(logr(rng));
    const double lam = radial_hessian(k, r);
    EXPECT_GE(r * lam, 1.0 - 1e-12);
    EXPECT_GE(lam, std::sqrt(-k) - 1e-12);
    EXPECT_LE(radial_hessian(k, 1.1 * r), lam + 1e-12);
  }
}

TEST(Riccati, OracleMatchesClosedForm) {
  const auto grid = log_grid();
  for (double k : {0.0, -0.5, -1.0, -2.0, -4.0}) {
    const auto numeric = riccati_oracle(k, grid);
    ASSERT_EQ(numeric.size(), grid.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(numeric[i] - radial_hessian(k, grid[i])));
    }
    EXPECT_LT(worst, 1e-8) << "k = " << k;
  }
}

TEST(Grid, LogGridEndpointsAndSpacing) {
  const auto g = log_grid(1e-3, 100.0, 2000);
  ASSERT_EQ(g.size(), 2000u);
  EXPECT_NEAR(g.front(), 1e-3, 1e-18);
  EXPECT_NEAR(g.back(), 100.0, 1e-12);
  const double ratio = g[1] / g[0];
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], ratio, 1e-12);
}

TEST(Grid, DerivativeOfQuadraticIsExactInside) {
  const auto r = log_grid(0.1, 10.0, 200);
  std::vector<double> f;
  for (double x : r) f.push_back(3.0 * x * x - x);
  const auto df = grid_derivative(r, f);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) EXPECT_NEAR(df[i], 6.0 * r[i] - 1.0, 1e-9);
}

TEST(Profile, HyperbolicFourSpaceHasCothAs) {
  const RadialProfile p = build_profile({-1.0, -1.0, -1.0}, log_grid());
  for (int s = 0; s < 3; ++s) {
    const ASResult a = a_s_profile(p, s);
    EXPECT_TRUE(a.positive);
    EXPECT_TRUE(a.differential_ok);
    for (std::size_t i = 0; i < p.r.size(); i += 97) {
      EXPECT_NEAR(a.values[i], 1.0 / std::tanh(p.r[i]), 1e-9 * a.values[i]);
    }
  }
  EXPECT_EQ(p.base_dimension(), 4);
}

// Generator: nonpositive spectra whose Ricci value -b^2 = sum K_t obeys
// b^2 >= 2 a^2 with a^2 = max |K_t|, the hypothesis under which A_s > 0.
std::vector<double> pinched_spectrum(std::mt19937_64& rng, int n, bool with_flat) {
  std::uniform_real_distribution<double> kdist(-4.0, 0.0);
  std::vector<double> ks;
  for (int i = 0; i < n - 1; ++i) ks.push_back(with_flat && i == 0 ? 0.0 : kdist(rng));
  // Clamp the largest magnitude to the sum of the others.
  const auto worst = std::min_element(ks.begin(), ks.end());
  double others = 0.0;
  for (auto it = ks.begin(); it != ks.end(); ++it) {
    if (it != worst) others -= *it;
  }
  *worst = -std::min(-*worst, others);
  return ks;
}

TEST(Profile, RandomPinchedSpectraHavePositiveAs) {
  auto rng = make_rng(32, 0);
  std::uniform_int_distribution<int> ndist(4, 16);
  const auto grid = log_grid(1e-3, 100.0, 400);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = ndist(rng);
    const std::vector<double> ks = pinched_spectrum(rng, n, trial % 5 == 0);
    const RadialProfile p = build_profile(ks, grid);
    for (int s = 0; s < n - 1; ++s) {
      const ASResult a = a_s_profile(p, s);
      EXPECT_TRUE(a.positive) << "trial " << trial << " s " << s;
      EXPECT_TRUE(a.differential_ok) << "trial " << trial << " s " << s;
    }
    const ComparisonResult c = comparison_check(p);
    EXPECT_TRUE(c.pass);
    EXPECT_GE(c.min_r_lambda, 1.0 - 1e-9);
    EXPECT_DOUBLE_EQ(c.bound, 0.5 * (n - 2));
  }
}

// Without the Ricci hypothesis A_s can turn negative: one direction at -4,
// the rest flat, gives A_s -> (n - 2)/r - 2 < 0 for large r.
TEST(Profile, UnpinchedSpectrumCanFail) {
  const RadialProfile p = build_profile({-4.0, 0.0, 0.0, 0.0}, log_grid());
  EXPECT_FALSE(a_s_profile(p, 0).positive);
}

TEST(Profile, RejectsLowDimensionAndPositiveCurvature) {
  EXPECT_THROW(build_profile({-1.0, -1.0}, log_grid()), InvalidInput);
  EXPECT_THROW(build_profile({-1.0, -1.0, 0.1}, log_grid()), InvalidInput);
  // Roundoff-sized positive values are clamped to flat.
  EXPECT_NO_THROW(build_profile({-1.0, -1.0, 1e-12}, log_grid()));
}

TEST(Profile, FlatProfileHasRLambdaOne) {
  const RadialProfile p = build_profile({0.0, 0.0, 0.0}, log_grid());
  for (std::size_t i = 0; i < p.r.size(); i += 131) {
    EXPECT_NEAR(p.r[i] * p.lambda(static_cast<Eigen::Index>(i), 0), 1.0, 1e-12);
  }
}

TEST(Comparison, ParamsValidation) {
  EXPECT_NO_THROW(validate(ComparisonParams{2.0, 4.0, 8}));
  EXPECT_THROW(validate(ComparisonParams{-1.0, 4.0, 8}), InvalidInput);
  EXPECT_THROW(validate(ComparisonParams{1.0, 0.0, 8}), InvalidInput);
  EXPECT_THROW(validate(ComparisonParams{1.0, 3.0, 3}), InvalidInput);
}

TEST(Comparison, RicciGapPerFamily) {
  EXPECT_DOUBLE_EQ(ricci_gap(-1.0, -3.0), 1.0);    // so(1,4)
  EXPECT_DOUBLE_EQ(ricci_gap(-2.0, -4.0), 0.0);    // so(2,4)
  EXPECT_DOUBLE_EQ(ricci_gap(-4.0, -12.0), 4.0);   // sp(1,1)
  EXPECT_DOUBLE_EQ(ricci_gap(-4.0, -16.0), 8.0);   // sp(1,2)
}

}  // namespace
}  // namespace vhs
