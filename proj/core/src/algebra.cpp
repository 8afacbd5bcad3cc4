#include "vhs/algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <sstream>

#include "vhs/errors.hpp"
#include "vhs/tolerances.hpp"

namespace vhs {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::Map<const VectorXd> flat(const MatrixXd& m) { return {m.data(), m.size()}; }

// Solves for coordinates of matrices over a fixed basis via its Frobenius Gram.
class BasisSolver {
 public:
  explicit BasisSolver(const std::vector<MatrixXd>& basis) {
    const auto d = static_cast<Eigen::Index>(basis.size());
    const Eigen::Index len = basis.front().size();
    flat_.resize(len, d);
    for (Eigen::Index a = 0; a < d; ++a) flat_.col(a) = flat(basis[a]);
    gram_.compute(flat_.transpose() * flat_);
  }

  VectorXd solve(const MatrixXd& m) const { return gram_.solve(flat_.transpose() * flat(m)); }

  double residual(const MatrixXd& m, const VectorXd& coords) const {
    return (flat(m) - flat_ * coords).cwiseAbs().maxCoeff();
  }

  const MatrixXd& flattened() const { return flat_; }

 private:
  MatrixXd flat_;
  Eigen::LDLT<MatrixXd> gram_;
};

// Left multiplication by the quaternion a + b i + c j + d k on R^4.
Eigen::Matrix4d quaternion_left(double a, double b, double c, double d) {
  Eigen::Matrix4d q;
  q << a, -b, -c, -d,
       b, a, -d, c,
       c, d, a, -b,
       d, -c, b, a;
  return q;
}

const std::array<Eigen::Matrix4d, 4>& quaternion_units() {
  static const std::array<Eigen::Matrix4d, 4> units = {
      quaternion_left(1, 0, 0, 0), quaternion_left(0, 1, 0, 0),
      quaternion_left(0, 0, 1, 0), quaternion_left(0, 0, 0, 1)};
  return units;
}

std::vector<MatrixXd> so_generators(int p, int size) {
  std::vector<MatrixXd> out;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      MatrixXd x = MatrixXd::Zero(size, size);
      const bool compact = (i < p) == (j < p);
      x(i, j) = 1.0;
      x(j, i) = compact ? -1.0 : 1.0;
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<MatrixXd> sp_generators(int m, int n) {
  const int count = m + n;
  const int size = 4 * count;
  const auto& units = quaternion_units();
  std::vector<MatrixXd> out;
  // Imaginary quaternions on the diagonal.
  for (int a = 0; a < count; ++a) {
    for (int u = 1; u < 4; ++u) {
      MatrixXd x = MatrixXd::Zero(size, size);
      x.block<4, 4>(4 * a, 4 * a) = units[u];
      out.push_back(std::move(x));
    }
  }
  // Off-diagonal pairs: A_ba = -conj(A_ab) inside a block, +conj(A_ab) across.
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      const bool compact = (a < m) == (b < m);
      for (int u = 0; u < 4; ++u) {
        MatrixXd x = MatrixXd::Zero(size, size);
        x.block<4, 4>(4 * a, 4 * b) = units[u];
        x.block<4, 4>(4 * b, 4 * a) = (compact ? -1.0 : 1.0) * units[u].transpose();
        out.push_back(std::move(x));
      }
    }
  }
  return out;
}

// Modified Gram-Schmidt (two passes) under the positive form `inner`.
// Columns of `against` must already be orthonormal and are projected out.
// With `allow_drop`, columns whose remainder falls below the rank cutoff
// relative to their original length are discarded; otherwise the Gram matrix
// condition number is checked up front.
MatrixXd orthonormalize(const MatrixXd& cols, const MatrixXd& inner, const MatrixXd& against,
                        bool allow_drop) {
  if (!allow_drop && cols.cols() > 0) {
    const MatrixXd gram = cols.transpose() * inner * cols;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi / lo > tol::kMaxCondition) {
      throw NumericalError("orthonormalization: near-degenerate Gram matrix (condition " +
                           std::to_string(lo <= 0.0 ? INFINITY : hi / lo) + ")");
    }
  }
  std::vector<VectorXd> accepted;
  for (Eigen::Index j = 0; j < against.cols(); ++j) accepted.push_back(against.col(j));
  const auto first_new = accepted.size();

  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    VectorXd v = cols.col(j);
    const double original = std::sqrt(std::max(0.0, v.dot(inner * v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : accepted) v -= e.dot(inner * v) * e;
    }
    const double len = std::sqrt(std::max(0.0, v.dot(inner * v)));
    if (allow_drop && len <= tol::kRank * std::max(original, 1.0)) continue;
    accepted.push_back(v / len);
  }
  MatrixXd out(cols.rows(), static_cast<Eigen::Index>(accepted.size() - first_new));
  for (std::size_t j = first_new; j < accepted.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j - first_new)) = accepted[j];
  }
  return out;
}

// Orthonormal basis (Euclidean) of the column space of `m`.
MatrixXd column_space(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol::kRank) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Orthonormal basis (Euclidean) of the null space of `m`.
MatrixXd null_space(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol::kRank) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

int AlgebraSpec::matrix_size() const {
  return family == Family::SO ? param1 + 2 * param2 : 4 * (param1 + param2);
}

int AlgebraSpec::dimension() const {
  if (family == Family::SO) {
    const int size = param1 + 2 * param2;
    return size * (size - 1) / 2;
  }
  const int count = param1 + param2;
  return count * (2 * count + 1);
}

int AlgebraSpec::compact_rank() const {
  return family == Family::SO ? param1 / 2 + param2 : param1 + param2;
}

int AlgebraSpec::base_dimension() const {
  return family == Family::SO ? 2 * param1 * param2 : 4 * param1 * param2;
}

std::string AlgebraSpec::name() const {
  std::ostringstream os;
  if (family == Family::SO) {
    os << "so(" << param1 << "," << 2 * param2 << ")";
  } else {
    os << "sp(" << param1 << "," << param2 << ")";
  }
  return os.str();
}

std::string AlgebraSpec::space_label() const {
  std::ostringstream os;
  if (family == Family::SO) {
    os << "SO(" << param1 << "," << 2 * param2 << ")/SO(" << param1 << ")xSO(" << 2 * param2
       << ")";
  } else {
    os << "Sp(" << param1 << "," << param2 << ")/Sp(" << param1 << ")xSp(" << param2 << ")";
  }
  return os.str();
}

bool AlgebraSpec::table_applicable() const {
  return family == Family::SP || param2 >= 2;
}

Eigen::MatrixXd AlgebraSpec::involution() const {
  const int size = matrix_size();
  const int positive = family == Family::SO ? param1 : 4 * param1;
  VectorXd diag = VectorXd::Constant(size, -1.0);
  diag.head(positive).setOnes();
  return diag.asDiagonal();
}

void validate(const AlgebraSpec& spec) {
  if (spec.param1 < 1 || spec.param2 < 1) {
    throw InvalidInput("algebra parameters must be positive integers, got " + spec.name());
  }
  if (spec.family == Family::SO && spec.param1 + 2 * spec.param2 < 3) {
    throw InvalidInput("so(p,2q) needs p+2q >= 3");
  }
  if (spec.family == Family::SP && spec.param1 + spec.param2 < 2) {
    throw InvalidInput("sp(m,n) needs m+n >= 2");
  }
}

BracketExpansion expand_brackets(const std::vector<MatrixXd>& basis) {
  if (basis.empty()) throw InvalidInput("expand_brackets: empty basis");
  const int d = static_cast<int>(basis.size());
  const BasisSolver solver(basis);
  BracketExpansion out{Tensor3(d), 0.0};
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const MatrixXd bracket = basis[a] * basis[b] - basis[b] * basis[a];
      const VectorXd coeffs = solver.solve(bracket);
      out.residual = std::max(out.residual, solver.residual(bracket, coeffs));
      for (int c = 0; c < d; ++c) {
        out.c(a, b, c) = coeffs(c);
        out.c(b, a, c) = -coeffs(c);
      }
    }
  }
  return out;
}

Eigen::MatrixXd MatrixBasis::combine(const VectorXd& coords) const {
  MatrixXd out = MatrixXd::Zero(basis.front().rows(), basis.front().cols());
  for (int a = 0; a < dim; ++a) out += coords(a) * basis[a];
  return out;
}

MatrixBasis build_algebra(const AlgebraSpec& spec) {
  validate(spec);
  MatrixBasis out;
  out.basis = spec.family == Family::SO ? so_generators(spec.param1, spec.matrix_size())
                                        : sp_generators(spec.param1, spec.param2);
  out.dim = static_cast<int>(out.basis.size());
  if (out.dim != spec.dimension()) {
    throw NumericalError("build_algebra: generated " + std::to_string(out.dim) +
                         " matrices, expected " + std::to_string(spec.dimension()));
  }

  const MatrixXd eta = spec.involution();
  for (const auto& x : out.basis) {
    out.condition_residual =
        std::max(out.condition_residual, (x.transpose() * eta + eta * x).cwiseAbs().maxCoeff());
  }

  const BasisSolver solver(out.basis);
  out.min_singular_value = Eigen::JacobiSVD<MatrixXd>(solver.flattened()).singularValues().minCoeff();
  if (out.min_singular_value <= 1e-10) {
    throw NumericalError("build_algebra: generated matrices are linearly dependent");
  }

  auto expansion = expand_brackets(out.basis);
  out.closure_residual = expansion.residual;
  out.brackets = std::move(expansion.c);
  if (out.closure_residual >= tol::kIdentity) {
    throw NumericalError("build_algebra: dimension mismatch, bracket closure residual " +
                         std::to_string(out.closure_residual));
  }
  return out;
}

Eigen::MatrixXd killing_form(const Tensor3& c) {
  const int d = c.dim();
  MatrixXd b = MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int bb = a; bb < d; ++bb) {
      double sum = 0.0;
      for (int e = 0; e < d; ++e) {
        for (int f = 0; f < d; ++f) sum += c(a, e, f) * c(bb, f, e);
      }
      b(a, bb) = b(bb, a) = sum;
    }
  }
  return b;
}

Eigen::MatrixXd killing_form(const MatrixBasis& basis) { return killing_form(basis.brackets); }

Eigen::MatrixXd ad_matrix(const Tensor3& c, const VectorXd& x) {
  const int d = c.dim();
  MatrixXd ad = MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < d; ++b) {
      for (int e = 0; e < d; ++e) ad(e, b) += x(a) * c(a, b, e);
    }
  }
  return ad;
}

CartanSplit cartan_decompose(const MatrixBasis& basis, const AlgebraSpec& spec) {
  const MatrixXd eta = spec.involution();
  const BasisSolver solver(basis.basis);
  CartanSplit out;
  out.theta.resize(basis.dim, basis.dim);
  for (int b = 0; b < basis.dim; ++b) {
    const MatrixXd image = eta * basis.basis[b] * eta;
    out.theta.col(b) = solver.solve(image);
    if (solver.residual(image, out.theta.col(b)) > tol::kIdentity) {
      throw NumericalError("cartan_decompose: involution does not preserve the algebra");
    }
  }
  const MatrixXd id = MatrixXd::Identity(basis.dim, basis.dim);
  out.k = column_space(0.5 * (id + out.theta));
  out.m = column_space(0.5 * (id - out.theta));
  if (out.k.cols() + out.m.cols() != basis.dim) {
    throw NumericalError("cartan_decompose: eigenspaces of the involution do not span g");
  }
  out.killing = killing_form(basis);

  const auto block_eigs = [&](const MatrixXd& cols) {
    return Eigen::SelfAdjointEigenSolver<MatrixXd>(cols.transpose() * out.killing * cols)
        .eigenvalues()
        .eval();
  };
  if (out.k.cols() > 0 && block_eigs(out.k).maxCoeff() >= -tol::kRank) {
    throw NumericalError("cartan_decompose: Killing form is not negative definite on k");
  }
  if (out.m.cols() == 0 || block_eigs(out.m).minCoeff() <= tol::kRank) {
    throw NumericalError("cartan_decompose: Killing form is not positive definite on m");
  }
  return out;
}

double theta_invariance_residual(const CartanSplit& split) {
  return (split.theta.transpose() * split.killing * split.theta - split.killing)
      .cwiseAbs()
      .maxCoeff();
}

Eigen::MatrixXd maximal_torus(const MatrixBasis& basis, const AlgebraSpec& spec) {
  const int size = spec.matrix_size();
  std::vector<MatrixXd> gens;
  if (spec.family == Family::SO) {
    const int p = spec.param1;
    const auto plane = [&](int i) {
      MatrixXd x = MatrixXd::Zero(size, size);
      x(i, i + 1) = 1.0;
      x(i + 1, i) = -1.0;
      return x;
    };
    for (int i = 0; i + 1 < p; i += 2) gens.push_back(plane(i));
    for (int i = p; i + 1 < size; i += 2) gens.push_back(plane(i));
  } else {
    const int count = spec.param1 + spec.param2;
    for (int a = 0; a < count; ++a) {
      MatrixXd x = MatrixXd::Zero(size, size);
      x.block<4, 4>(4 * a, 4 * a) = quaternion_units()[1];
      gens.push_back(std::move(x));
    }
  }

  const BasisSolver solver(basis.basis);
  const auto rank = static_cast<Eigen::Index>(gens.size());
  MatrixXd torus(basis.dim, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    torus.col(j) = solver.solve(gens[j]);
    if (solver.residual(gens[j], torus.col(j)) > tol::kIdentity) {
      throw NumericalError("maximal_torus: generator outside the algebra");
    }
    for (Eigen::Index i = 0; i < j; ++i) {
      if ((gens[i] * gens[j] - gens[j] * gens[i]).cwiseAbs().maxCoeff() > tol::kConstruction) {
        throw NumericalError("maximal_torus: generators do not commute");
      }
    }
  }

  const VectorXd generic = torus * default_xi(static_cast<int>(rank));
  const auto centralizer_dim = null_space(ad_matrix(basis.brackets, generic)).cols();
  if (centralizer_dim != rank) {
    throw NumericalError("maximal_torus: centralizer of a generic torus element has dimension " +
                         std::to_string(centralizer_dim) + ", expected " + std::to_string(rank) +
                         " (Cartan subalgebra is not compact)");
  }
  return torus;
}

Eigen::VectorXd default_xi(int rank) {
  return VectorXd::LinSpaced(rank, 1.0, static_cast<double>(rank));
}

Centralizer centralizer_subalgebra(const MatrixBasis& basis, const CartanSplit& split,
                                   const VectorXd& xi, int torus_rank) {
  if (xi.norm() < tol::kConstruction) throw InvalidInput("centralizer: xi must be nonzero");
  const VectorXd odd = 0.5 * (xi - split.theta * xi);
  if (odd.norm() > tol::kIdentity * std::max(1.0, xi.norm())) {
    throw InvalidInput("centralizer: xi does not lie in k");
  }
  Centralizer out;
  out.xi = xi;
  out.r = static_cast<int>(split.k.cols());
  const MatrixXd restricted = ad_matrix(basis.brackets, xi) * split.k;
  out.v = split.k * null_space(restricted);
  const int dim_v = static_cast<int>(out.v.cols());
  out.r1 = torus_rank - 1;
  out.r2 = dim_v - torus_rank;
  if (out.r2 < 0) {
    throw NumericalError("centralizer: dimension below the torus rank");
  }
  if (out.r1 + out.r2 + 1 >= out.r) {
    throw InvalidInput("centralizer: dim v = " + std::to_string(dim_v) + " equals dim k = " +
                       std::to_string(out.r) + "; need r1 + r2 + 1 < r (V must be a proper "
                       "subgroup of K)");
  }
  return out;
}

CanonicalBasis canonical_basis(const MatrixBasis& basis, const CartanSplit& split,
                               const Centralizer& centralizer) {
  const MatrixXd inner = -split.killing * split.theta;
  if ((inner - inner.transpose()).cwiseAbs().maxCoeff() > tol::kIdentity) {
    throw NumericalError("canonical_basis: -B(., theta .) is not symmetric");
  }
  const MatrixXd none(basis.dim, 0);
  const MatrixXd m_block = orthonormalize(split.m, inner, none, false);
  const MatrixXd v_block = orthonormalize(centralizer.v, inner, none, false);
  const MatrixXd fiber_block = orthonormalize(split.k, inner, v_block, true);

  CanonicalBasis out;
  out.layout.n = static_cast<int>(m_block.cols());
  out.layout.r = static_cast<int>(split.k.cols());
  out.layout.fiber = static_cast<int>(fiber_block.cols());
  out.r1 = centralizer.r1;
  out.r2 = centralizer.r2;
  if (out.layout.fiber + v_block.cols() != out.layout.r) {
    throw NumericalError("canonical_basis: k minus v has the wrong dimension");
  }

  out.coords.resize(basis.dim, basis.dim);
  out.coords << m_block, fiber_block, v_block;
  out.X.reserve(basis.dim);
  for (int a = 0; a < basis.dim; ++a) out.X.push_back(basis.combine(out.coords.col(a)));

  out.killing = out.coords.transpose() * split.killing * out.coords;
  VectorXd target = VectorXd::Constant(basis.dim, -1.0);
  target.head(out.layout.n).setOnes();
  out.gram_residual = (out.killing - MatrixXd(target.asDiagonal())).cwiseAbs().maxCoeff();
  return out;
}

StructureTensor structure_tensor_from(const Tensor3& c_up, const MatrixXd& gram_B,
                                      const BlockLayout& layout) {
  const int d = c_up.dim();
  StructureTensor st;
  st.c_up = c_up;
  st.gram_B = gram_B;
  st.gram_g = MatrixXd::Identity(d, d);
  st.layout = layout;
  st.c_low = Tensor3(d);
  for (int dd = 0; dd < d; ++dd) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        double sum = 0.0;
        for (int e = 0; e < d; ++e) sum += c_up(a, b, e) * gram_B(dd, e);
        st.c_low(dd, a, b) = sum;
      }
    }
  }
  return st;
}

StructureTensor structure_tensor(const CanonicalBasis& cb) {
  auto expansion = expand_brackets(cb.X);
  if (expansion.residual >= tol::kIdentity) {
    throw NumericalError("structure_tensor: expansion residual " +
                         std::to_string(expansion.residual) + " (basis not closed)");
  }
  auto st = structure_tensor_from(expansion.c, cb.killing, cb.layout);
  st.expansion_residual = expansion.residual;
  return st;
}

double forbidden_block_residual(const StructureTensor& st) {
  const int d = st.c_up.dim();
  const int n = st.layout.n;
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const int m_count = (a < n) + (b < n);
      for (int c = 0; c < d; ++c) {
        // [m,m] and [k,k] land in k; [m,k] lands in m.
        const bool allowed = (m_count == 1) == (c < n);
        if (!allowed) worst = std::max(worst, std::abs(st.c_up(a, b, c)));
      }
    }
  }
  return worst;
}

Construction construct(const AlgebraSpec& spec, const std::optional<VectorXd>& xi_coefficients) {
  Construction out;
  out.spec = spec;
  out.basis = build_algebra(spec);
  out.split = cartan_decompose(out.basis, spec);
  out.torus = maximal_torus(out.basis, spec);
  const int rank = static_cast<int>(out.torus.cols());
  out.xi_coefficients = xi_coefficients.value_or(default_xi(rank));
  if (out.xi_coefficients.size() != rank) {
    throw InvalidInput("xi needs " + std::to_string(rank) + " torus coefficients for " +
                       spec.name() + ", got " + std::to_string(out.xi_coefficients.size()));
  }
  out.centralizer =
      centralizer_subalgebra(out.basis, out.split, out.torus * out.xi_coefficients, rank);
  out.canonical = canonical_basis(out.basis, out.split, out.centralizer);
  out.structure = structure_tensor(out.canonical);
  return out;
}

std::uint64_t basis_hash(const CanonicalBasis& cb) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& x : cb.X) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      std::uint64_t bits = 0;
      const double v = x.data()[i];
      std::memcpy(&bits, &v, sizeof bits);
      for (int byte = 0; byte < 8; ++byte) {
        h ^= (bits >> (8 * byte)) & 0xffU;
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

}  // namespace vhs
