#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vhs/algebra.hpp"
#include "vhs/tolerances.hpp"

namespace vhs {

struct IdentityCheck {
  std::string name;
  std::string formula;
  double residual = 0.0;
  double tolerance = tol::kIdentityReport;
  bool pass = false;
};

struct IdentityReport {
  std::string algebra;
  std::uint64_t basis_hash = 0;
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
  /// Throws std::out_of_range for an unknown name.
  const IdentityCheck& at(const std::string& name) const;
};

/// Residuals are max-norm deviations in the Killing-lowered convention:
///   killing        c_ae^f c_bf^e against diag(+1 on m, -1 on k)
///   antisymmetry   c_low under swaps of the first/second and second/third slots
///   m_contraction  sum_{alpha,k} c_{alpha i k} c_{alpha j k} = delta_ij / 2
///   k_contraction  sum_{i,j} c_{i alpha j} c_{i beta j}
///                    + sum_{gamma,delta} c_{gamma alpha delta} c_{gamma beta delta} = delta
///   jacobi         cyclic sum of c_ab^e c_ce^f (equivalent to d^2 = 0 on the
///                  Maurer-Cartan forms)
IdentityReport verify_identities(const StructureTensor& st, double tolerance = tol::kIdentityReport);

double killing_identity_residual(const StructureTensor& st);
double antisymmetry_residual(const Tensor3& c_low);
double m_contraction_residual(const StructureTensor& st);
double k_contraction_residual(const StructureTensor& st);
double jacobi_residual(const Tensor3& c_up);

}  // namespace vhs
