#include "vhs/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vhs {

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const IdentityCheck& IdentityReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no identity check named " + name);
}

double killing_identity_residual(const StructureTensor& st) {
  const int d = st.c_up.dim();
  const Eigen::MatrixXd contraction = killing_form(st.c_up);
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double target = a != b ? 0.0 : (a < st.layout.n ? 1.0 : -1.0);
      worst = std::max(worst, std::abs(contraction(a, b) - target));
    }
  }
  return worst;
}

double antisymmetry_residual(const Tensor3& c_low) {
  const int d = c_low.dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        worst = std::max(worst, std::abs(c_low(a, b, c) + c_low(b, a, c)));
        worst = std::max(worst, std::abs(c_low(a, b, c) + c_low(a, c, b)));
      }
    }
  }
  return worst;
}

double m_contraction_residual(const StructureTensor& st) {
  const int n = st.layout.n;
  const int d = st.layout.dim();
  const auto& c = st.c_low;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int alpha = n; alpha < d; ++alpha) {
        for (int k = 0; k < n; ++k) sum += c(alpha, i, k) * c(alpha, j, k);
      }
      worst = std::max(worst, std::abs(sum - (i == j ? 0.5 : 0.0)));
    }
  }
  return worst;
}

double k_contraction_residual(const StructureTensor& st) {
  const int n = st.layout.n;
  const int d = st.layout.dim();
  const auto& c = st.c_low;
  double worst = 0.0;
  for (int alpha = n; alpha < d; ++alpha) {
    for (int beta = n; beta < d; ++beta) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sum += c(i, alpha, j) * c(i, beta, j);
      }
      for (int gamma = n; gamma < d; ++gamma) {
        for (int delta = n; delta < d; ++delta) sum += c(gamma, alpha, delta) * c(gamma, beta, delta);
      }
      worst = std::max(worst, std::abs(sum - (alpha == beta ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double jacobi_residual(const Tensor3& c) {
  const int d = c.dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      for (int cc = b + 1; cc < d; ++cc) {
        for (int f = 0; f < d; ++f) {
          double sum = 0.0;
          for (int e = 0; e < d; ++e) {
            sum += c(a, b, e) * c(cc, e, f) + c(cc, a, e) * c(b, e, f) + c(b, cc, e) * c(a, e, f);
          }
          worst = std::max(worst, std::abs(sum));
        }
      }
    }
  }
  return worst;
}

IdentityReport verify_identities(const StructureTensor& st, double tolerance) {
  IdentityReport report;
  const auto add = [&](std::string name, std::string formula, double residual) {
    report.checks.push_back(
        {std::move(name), std::move(formula), residual, tolerance, residual < tolerance});
  };
  add("killing", "B_ab = c_ae^f c_bf^e = diag(+1_m, -1_k)", killing_identity_residual(st));
  add("antisymmetry", "c_abc = c_ab^e B_ce totally antisymmetric", antisymmetry_residual(st.c_low));
  add("m_contraction", "sum c_aik c_ajk = delta_ij / 2", m_contraction_residual(st));
  add("k_contraction", "sum c_iaj c_ibj + sum c_gad c_gbd = delta_ab", k_contraction_residual(st));
  add("jacobi", "c_ab^e c_ce^f + c_ca^e c_be^f + c_bc^e c_ae^f = 0", jacobi_residual(st.c_up));
  return report;
}

}  // namespace vhs
