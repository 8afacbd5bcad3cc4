#pragma once

namespace vhs::tol {

// Construction-level roundoff (closure of generated bases, symmetry of B).
inline constexpr double kConstruction = 1e-12;
// Algebraic identities on structure constants and curvature symmetries.
inline constexpr double kIdentity = 1e-10;
// Pass threshold for the identity report.
inline constexpr double kIdentityReport = 1e-9;
// Singular-value cutoff for rank decisions (null spaces, eigenspaces).
inline constexpr double kRank = 1e-8;
// Condition-number ceiling for Gram matrices during orthonormalization.
inline constexpr double kMaxCondition = 1e12;

}  // namespace vhs::tol
