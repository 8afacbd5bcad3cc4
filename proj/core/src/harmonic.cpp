#include "vhs/harmonic.hpp"

#include <cmath>

#include "vhs/errors.hpp"
#include "vhs/tolerances.hpp"

namespace vhs {

Eigen::VectorXd FormCoefficients::stacked() const {
  Eigen::VectorXd out(horizontal.size() + fiber.size());
  out << horizontal, fiber;
  return out;
}

InvariantHarmonicSpace invariant_harmonic_space(const StructureTensor& st) {
  const int dim = st.layout.n1();
  InvariantHarmonicSpace out;
  out.constraint.resize(dim * (dim - 1) / 2, dim);
  int row = 0;
  for (int i1 = 0; i1 < dim; ++i1) {
    for (int i2 = i1 + 1; i2 < dim; ++i2, ++row) {
      for (int j1 = 0; j1 < dim; ++j1) out.constraint(row, j1) = st.c_up(i1, i2, j1);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.constraint, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  out.min_singular_value = out.singular_values.size() ? out.singular_values.minCoeff() : 0.0;
  Eigen::Index rank = 0;
  while (rank < out.singular_values.size() && out.singular_values(rank) > tol::kRank) ++rank;
  out.basis = svd.matrixV().rightCols(dim - rank);
  out.dimension = static_cast<int>(dim - rank);
  return out;
}

Eigen::VectorXd harmonic_constraint(const InvariantHarmonicSpace& space, const Eigen::VectorXd& u) {
  if (u.size() != space.constraint.cols()) {
    throw InvalidInput("harmonic_constraint: coefficient vector has the wrong length");
  }
  return space.constraint * u;
}

double horizontality_residual(const Tensor3& c_low, const BlockLayout& layout,
                              const FormCoefficients& u, int s) {
  if (s < 0 || s >= layout.fiber) throw InvalidInput("horizontality_residual: bad fiber index");
  if (u.horizontal.size() != layout.n) {
    throw InvalidInput("horizontality_residual: horizontal part has the wrong length");
  }
  const int fs = layout.n + s;
  double sum = 0.0;
  for (int i = 0; i < layout.n; ++i) {
    for (int j = 0; j < layout.n; ++j) sum += c_low(j, fs, i) * u.horizontal(i) * u.horizontal(j);
  }
  return std::abs(sum);
}

double horizontality_residual(const StructureTensor& st, const FormCoefficients& u, int s) {
  return horizontality_residual(st.c_low, st.layout, u, s);
}

Tensor3 symmetrized_control(const Tensor3& c_low) {
  const int d = c_low.dim();
  Tensor3 out(d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) out(a, b, c) = a <= c ? c_low(a, b, c) : c_low(c, b, a);
    }
  }
  return out;
}

VerticalConstancyReport vertical_constancy_check(const StructureTensor& st,
                                                 const std::string& algebra_name,
                                                 int invariant_solution_dim) {
  VerticalConstancyReport out;
  out.entries.push_back(
      {"L_{X_s} omega = 0 for every fiber Killing field X_s of " + algebra_name +
           " (harmonic forms are preserved by isometries generated by Killing fields)",
       "assumption", true});
  out.entries.push_back(
      {"every L2 cohomology class has an L2-harmonic representative", "assumption", true});
  out.entries.push_back({"d(i_{X_s} omega) = L_{X_s} omega - i_{X_s} d omega = 0, so u_s is "
                         "constant on G/V",
                         "trivial", true});
  out.entries.push_back({"Vol(G/V) = infinity: G/K is a noncompact symmetric space and the "
                         "fiber K/V is compact",
                         "assumption", true});
  out.entries.push_back({"u_s constant and |omega|^2 integrable and Vol = infinity => u_s = 0",
                         "derived", true});
  const bool only_zero = invariant_solution_dim == 0;
  out.entries.push_back({"invariant solutions of the closedness system on " + algebra_name +
                             " form a space of dimension " +
                             std::to_string(invariant_solution_dim),
                         "derived", only_zero});
  out.entries.push_back({"zero form satisfies all conditions", "trivial", true});
  out.entries.push_back({"fiber block has " + std::to_string(st.layout.fiber) +
                             " directions, each carrying a constant component forced to 0",
                         "derived", st.layout.fiber > 0});
  for (const auto& e : out.entries) out.pass = out.pass && e.holds;
  return out;
}

}  // namespace vhs
