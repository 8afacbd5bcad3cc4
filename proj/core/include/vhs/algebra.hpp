#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhs/tensor.hpp"

namespace vhs {

enum class Family { SO, SP };

/// Real form selected by family and two block sizes.
///
/// For SO the algebra is so(p, 2q) realized as (p+2q)x(p+2q) real matrices
/// preserving diag(I_p, -I_2q). For SP the algebra is sp(m, n), with each
/// quaternion entry realized by its 4x4 left-multiplication matrix, so the
/// matrices are 4(m+n) square.
struct AlgebraSpec {
  Family family = Family::SO;
  int param1 = 1;  // p, resp. m
  int param2 = 2;  // q, resp. n

  static AlgebraSpec so(int p, int q) { return {Family::SO, p, q}; }
  static AlgebraSpec sp(int m, int n) { return {Family::SP, m, n}; }

  int matrix_size() const;
  int dimension() const;
  /// Rank of the maximal compact subalgebra (equal to the rank of g here).
  int compact_rank() const;
  /// Dimension of the symmetric space G/K.
  int base_dimension() const;

  /// "so(2,4)" / "sp(1,2)".
  std::string name() const;
  /// "SO(2,4)/SO(2)xSO(4)" / "Sp(1,2)/Sp(1)xSp(2)".
  std::string space_label() const;
  /// SO rows of the curvature table need q >= 2.
  bool table_applicable() const;

  /// Diagonal signature matrix whose conjugation is the Cartan involution.
  Eigen::MatrixXd involution() const;

  bool operator==(const AlgebraSpec&) const = default;
};

/// Throws InvalidInput for nonpositive parameters or a trivial algebra.
void validate(const AlgebraSpec& spec);

/// Coefficients of all brackets [X_a, X_b] = c_ab^c X_c, least squares
/// against the Frobenius Gram matrix of the basis.
struct BracketExpansion {
  Tensor3 c;
  double residual = 0.0;
};

BracketExpansion expand_brackets(const std::vector<Eigen::MatrixXd>& basis);

struct MatrixBasis {
  std::vector<Eigen::MatrixXd> basis;
  int dim = 0;
  double closure_residual = 0.0;
  double min_singular_value = 0.0;
  /// Largest violation of the defining condition X^T eta + eta X = 0.
  double condition_residual = 0.0;
  /// Structure constants in this basis.
  Tensor3 brackets;

  Eigen::MatrixXd combine(const Eigen::VectorXd& coords) const;
};

MatrixBasis build_algebra(const AlgebraSpec& spec);

/// Killing form B_ab = tr(ad X_a ad X_b) from structure constants.
Eigen::MatrixXd killing_form(const Tensor3& c);
Eigen::MatrixXd killing_form(const MatrixBasis& basis);

/// Matrix of ad(x) in coordinates: column b holds the coordinates of [x, X_b].
Eigen::MatrixXd ad_matrix(const Tensor3& c, const Eigen::VectorXd& x);

/// Cartan decomposition in coordinates over a MatrixBasis. Columns of `k`
/// and `m` span the +1 and -1 eigenspaces of the involution.
struct CartanSplit {
  Eigen::MatrixXd theta;    // involution in basis coordinates
  Eigen::MatrixXd killing;  // B in basis coordinates
  Eigen::MatrixXd m;
  Eigen::MatrixXd k;
};

CartanSplit cartan_decompose(const MatrixBasis& basis, const AlgebraSpec& spec);

/// Standard maximal torus of k in basis coordinates (one column per
/// generator): coordinate-plane rotations for SO, diagonal unit quaternions
/// for SP. Verifies commutativity and that a generic element has a
/// centralizer in all of g of dimension equal to the torus rank, i.e. the
/// Cartan subalgebra is compact.
Eigen::MatrixXd maximal_torus(const MatrixBasis& basis, const AlgebraSpec& spec);

/// Coefficients (1, 2, ..., rank): a generic torus element whose
/// centralizer is the torus itself.
Eigen::VectorXd default_xi(int rank);

struct Centralizer {
  Eigen::MatrixXd v;   // basis coordinates of v = z_k(xi)
  Eigen::VectorXd xi;  // basis coordinates of xi
  int r = 0;           // dim k
  int r1 = 0;          // dim H - 1
  int r2 = 0;          // dim V - dim H
};

/// v = {X in k : [xi, X] = 0}. Rejects xi outside k, xi = 0, and the
/// degenerate case dim v = dim k.
Centralizer centralizer_subalgebra(const MatrixBasis& basis, const CartanSplit& split,
                                   const Eigen::VectorXd& xi, int torus_rank);

/// Index layout of the canonical basis: m-block [0, n), fiber block
/// (k minus v) [n, n1), v-block [n1, n + r).
struct BlockLayout {
  int n = 0;
  int r = 0;
  int fiber = 0;

  int dim() const { return n + r; }
  int n1() const { return n + fiber; }
  int v_count() const { return r - fiber; }
};

struct CanonicalBasis {
  std::vector<Eigen::MatrixXd> X;
  /// Column a holds the coordinates of X_a over the source MatrixBasis.
  Eigen::MatrixXd coords;
  BlockLayout layout;
  int r1 = 0;
  int r2 = 0;
  /// Killing form in this basis, transported from the source basis.
  Eigen::MatrixXd killing;
  /// max |killing - diag(+1 x n, -1 x r)|.
  double gram_residual = 0.0;
};

CanonicalBasis canonical_basis(const MatrixBasis& basis, const CartanSplit& split,
                               const Centralizer& centralizer);

enum class LoweringConvention { Killing, Metric };

struct StructureTensor {
  Tensor3 c_up;   // c_up(a, b, c) = c_ab^c
  Tensor3 c_low;  // c_low(d, a, b) = c_ab^e B_de
  Eigen::MatrixXd gram_B;
  Eigen::MatrixXd gram_g;
  LoweringConvention lowering = LoweringConvention::Killing;
  BlockLayout layout;
  double expansion_residual = 0.0;
};

/// Expands brackets of a canonical basis and lowers with the Killing form.
StructureTensor structure_tensor(const CanonicalBasis& cb);

/// Builds a StructureTensor from given upper-index constants, lowering with
/// the supplied Killing Gram matrix. Used for re-mixed bases in tests.
StructureTensor structure_tensor_from(const Tensor3& c_up, const Eigen::MatrixXd& gram_B,
                                      const BlockLayout& layout);

/// Largest entry in a block that must vanish for a Cartan-decomposed basis
/// (anything other than c_{ab}^{g} with {k,k}->k, {m,m}->k, {m,k}->m).
double forbidden_block_residual(const StructureTensor& st);

/// Max over basis pairs of |B(theta X, theta Y) - B(X, Y)|.
double theta_invariance_residual(const CartanSplit& split);

/// Everything downstream needs, built in one pass.
struct Construction {
  AlgebraSpec spec;
  MatrixBasis basis;
  CartanSplit split;
  Eigen::MatrixXd torus;
  Eigen::VectorXd xi_coefficients;
  Centralizer centralizer;
  CanonicalBasis canonical;
  StructureTensor structure;
};

/// `xi_coefficients` are over the columns of maximal_torus(); defaults to
/// default_xi(rank).
Construction construct(const AlgebraSpec& spec,
                       const std::optional<Eigen::VectorXd>& xi_coefficients = std::nullopt);

/// FNV-1a over the bytes of the canonical basis matrices.
std::uint64_t basis_hash(const CanonicalBasis& cb);

}  // namespace vhs
