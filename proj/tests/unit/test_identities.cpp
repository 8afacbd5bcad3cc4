#include <gtest/gtest.h>

#include "support.hpp"
#include "vhs/identities.hpp"
#include "vhs/random.hpp"

namespace vhs {
namespace {

using testing::built;

class IdentityTest : public ::testing::TestWithParam<AlgebraSpec> {};

TEST_P(IdentityTest, AllResidualsAreAtRoundoff) {
  const IdentityReport ir = verify_identities(built(GetParam()).structure);
  EXPECT_TRUE(ir.all_pass());
  for (const auto& check : ir.checks) EXPECT_LT(check.residual, 1e-12) << check.name;
  EXPECT_EQ(ir.checks.size(), 5u);
}

// Brute-force contraction over m and k blocks.
TEST_P(IdentityTest, MContractionIsHalfIdentity) {
  const auto& st = built(GetParam()).structure;
  const int n = st.layout.n;
  const int d = st.layout.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int alpha = n; alpha < d; ++alpha) {
        for (int k = 0; k < n; ++k) sum += st.c_low(alpha, i, k) * st.c_low(alpha, j, k);
      }
      EXPECT_NEAR(sum, i == j ? 0.5 : 0.0, 1e-12);
    }
  }
}

TEST_P(IdentityTest, KContractionIsIdentity) {
  const auto& st = built(GetParam()).structure;
  const int n = st.layout.n;
  const int d = st.layout.dim();
  for (int alpha = n; alpha < d; ++alpha) {
    for (int beta = n; beta < d; ++beta) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sum += st.c_low(i, alpha, j) * st.c_low(i, beta, j);
      }
      for (int g = n; g < d; ++g) {
        for (int h = n; h < d; ++h) sum += st.c_low(g, alpha, h) * st.c_low(g, beta, h);
      }
      EXPECT_NEAR(sum, alpha == beta ? 1.0 : 0.0, 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SixAlgebras, IdentityTest, ::testing::ValuesIn(testing::six_algebras()),
                         testing::spec_name);

TEST(IdentityNegative, PerturbedEntryBreaksAntisymmetry) {
  Tensor3 c = built(AlgebraSpec::so(2, 2)).structure.c_low;
  c(0, 8, 1) += 1e-3;
  EXPECT_GT(antisymmetry_residual(c), 5e-4);
}

TEST(IdentityNegative, RescaledBasisBreaksKillingNormalization) {
  const auto& st = built(AlgebraSpec::sp(1, 1)).structure;
  Tensor3 scaled = st.c_up;
  for (int a = 0; a < scaled.dim(); ++a) {
    for (int b = 0; b < scaled.dim(); ++b) {
      for (int c = 0; c < scaled.dim(); ++c) scaled(a, b, c) *= 1.1;
    }
  }
  const StructureTensor bad = structure_tensor_from(scaled, st.gram_B, st.layout);
  EXPECT_GT(killing_identity_residual(bad), 0.1);
  EXPECT_GT(m_contraction_residual(bad), 0.05);
  EXPECT_GT(k_contraction_residual(bad), 0.1);
  // Uniform rescaling keeps the Jacobi identity.
  EXPECT_LT(jacobi_residual(scaled), 1e-12);
}

TEST(IdentityNegative, RandomAntisymmetricTensorFailsJacobi) {
  auto rng = make_rng(3, 0);
  const int d = 6;
  Tensor3 c(d);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const Eigen::VectorXd v = random_gaussian(rng, d);
      for (int e = 0; e < d; ++e) {
        c(a, b, e) = v(e);
        c(b, a, e) = -v(e);
      }
    }
  }
  EXPECT_GT(jacobi_residual(c), 1e-3);
}

TEST(IdentityReportLookup, UnknownNameThrows) {
  const IdentityReport ir = verify_identities(built(AlgebraSpec::so(1, 2)).structure);
  EXPECT_NO_THROW(ir.at("jacobi"));
  EXPECT_THROW(ir.at("nope"), std::out_of_range);
}

}  // namespace
}  // namespace vhs
