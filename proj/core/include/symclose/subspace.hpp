#pragma once

#include <Eigen/Core>

#include <vector>

#include "symclose/tolerances.hpp"

namespace symclose {

using Vector = Eigen::VectorXd;

/// A linear subspace of R^n stored through an orthonormal basis (columns).
/// The zero subspace {o} has an n x 0 basis. Immutable after construction.
class Subspace {
 public:
  /// Trivial subspace {o} of R^n.
  explicit Subspace(int ambient_dim);

  /// Adopts `basis` columns, which must already be orthonormal within
  /// tol::kOrtho. Use orthonormalize() for raw input.
  Subspace(int ambient_dim, Eigen::MatrixXd basis);

  /// Full space R^n.
  static Subspace full(int ambient_dim);

  /// Span of coordinate axes e_{idx} (0-based indices).
  static Subspace coordinate(int ambient_dim, const std::vector<int>& axes);

  /// Span of a single vector (normalized); the zero vector yields {o}.
  static Subspace line(const Vector& direction);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Orthogonal projection of x onto this subspace.
  Vector project(const Vector& x) const;

  /// Projector matrix B B^T.
  Eigen::MatrixXd projector() const;

  /// Max |b_i . b_j| deviation of the Gram matrix from identity.
  double gram_defect() const;

  /// Residual norm of x after projecting onto the subspace.
  double residual(const Vector& x) const;

  /// True if spans(this) == spans(other): equal dims and every basis vector
  /// of each side projects onto the other with residual < tol::kSubspaceEq.
  bool same_span(const Subspace& other) const;

  /// True if every basis vector of this lies in `other` within tolerance.
  bool contained_in(const Subspace& other) const;

 private:
  int ambient_dim_;
  Eigen::MatrixXd basis_;  // n x dim, orthonormal columns
};

/// Orthonormalizes arbitrary spanning vectors; vectors whose residual after
/// removing projections onto the running basis is below `tol` are dropped.
Subspace orthonormalize(const std::vector<Vector>& vectors, double tol = tol::kOrtho);

/// Minkowski sum H1 + H2 (span of the union).
Subspace sum(const Subspace& h1, const Subspace& h2);

/// Intersection computed through (H1^perp + H2^perp)^perp.
Subspace intersect(const Subspace& h1, const Subspace& h2);

/// Orthogonal complement.
Subspace perp(const Subspace& h);

/// Projection of x onto H (free-function form of Subspace::project).
Vector project(const Vector& x, const Subspace& h);

/// S^{n-1} \cap (V + x): sphere slice by the translate of V through x.
/// Degenerates to the single point {x} when x is orthogonal to V.
struct SubSphere {
  Subspace direction;  // V
  Vector center;       // x - x|V, lies in V^perp
  double radius;       // sqrt(1 - |center|^2)

  int ambient_dim() const { return direction.ambient_dim(); }
  bool degenerate() const { return radius <= tol::kOrtho; }
};

/// Builds the sub-sphere through unit vector x in direction V.
SubSphere subsphere(const Subspace& v, const Vector& x);

/// x written in the frame adapted to a subspace pair: polar coordinates
/// (rho_j, theta_j) on each principal 2-plane, the component y1 inside H1
/// orthogonal to all principal directions, and the remainder y2 orthogonal
/// to H1 + H2.
struct PointDecomposition {
  Eigen::VectorXd rho;
  Eigen::VectorXd theta;
  Vector y1;
  Vector y2;
};

/// Canonical form of a subspace pair: the increasing principal angle list
/// alpha_1 <= ... <= alpha_i in [0, pi/2] together with an orthonormal basis
/// e_1..e_n in which H1 = span{e_1..e_k} and H2 = span{cos a_j e_j +
/// sin a_j e_{slot(j)}}, slot(j) = i + k - j (0-based). Slots that would
/// exceed n carry a forced zero angle and are marked inactive.
class PrincipalAngleDecomposition {
 public:
  PrincipalAngleDecomposition(int k, int i, Eigen::VectorXd angles,
                              Eigen::MatrixXd adapted_basis,
                              std::vector<int> slots);

  int dim_h1() const { return k_; }
  int dim_h2() const { return i_; }
  const Eigen::VectorXd& angles() const { return angles_; }
  const Eigen::MatrixXd& adapted_basis() const { return basis_; }

  /// 0-based column of the adapted basis paired with principal direction j,
  /// or -1 when the pairing is inactive (forced zero angle, i + k > n).
  int slot(int j) const { return slots_[static_cast<size_t>(j)]; }

  /// Rebuilds the first input subspace, span{e_1..e_k}.
  Subspace reconstruct_h1() const;

  /// Rebuilds the second input subspace from angles and slots.
  Subspace reconstruct_h2() const;

  /// Decomposes x per the adapted frame.
  PointDecomposition decompose(const Vector& x) const;

  /// Inverse of decompose().
  Vector recompose(const PointDecomposition& parts) const;

 private:
  int k_, i_;
  Eigen::VectorXd angles_;   // size i, increasing
  Eigen::MatrixXd basis_;    // n x n orthonormal
  std::vector<int> slots_;   // size i
};

/// Principal angles between H1 and H2 with dim H1 >= dim H2 >= 1 (callers
/// swap arguments otherwise). Cosines are the singular values of the basis
/// cross-Gram matrix, clamped into [0, 1] near the endpoints.
PrincipalAngleDecomposition principal_angles(const Subspace& h1, const Subspace& h2);

}  // namespace symclose
