#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <variant>
#include <vector>

#include "symclose/subspace.hpp"

namespace symclose {

namespace provenance {
struct Identity {};
struct Reflection {
  Subspace mirror;
};
struct PointReflection {};
struct StabilizerSample {
  Subspace fixed;
  std::uint64_t seed;
};
struct Word {
  std::vector<int> letters;
};
}  // namespace provenance

using Provenance =
    std::variant<provenance::Identity, provenance::Reflection,
                 provenance::PointReflection, provenance::StabilizerSample,
                 provenance::Word>;

/// An element of O(n) with a record of how it was built. The matrix must be
/// orthogonal within tol::kMap; provenance is metadata only and never enters
/// equality or deduplication.
class OrthogonalMap {
 public:
  OrthogonalMap(Eigen::MatrixXd matrix, Provenance prov);

  static OrthogonalMap identity(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Provenance& provenance() const { return prov_; }

  Vector apply(const Vector& x) const { return matrix_ * x; }

  /// Image subspace: the span of the mapped basis (still orthonormal).
  Subspace apply(const Subspace& h) const;

  double determinant() const { return matrix_.determinant(); }

  /// Max-abs entry of Q^T Q - I.
  double orthogonality_defect() const;

 private:
  Eigen::MatrixXd matrix_;
  Provenance prov_;
};

/// Reflection in H: x -> 2(x|H) - x, i.e. 2 P_H - I. For H = {o} this is the
/// point reflection -I.
OrthogonalMap reflection(const Subspace& h);

/// Seed-deterministic Haar sample from SO(dim): QR of a seeded Gaussian
/// matrix with the R diagonal made positive, last column flipped when needed
/// to land in the special orthogonal group.
Eigen::MatrixXd haar_special_orthogonal(int dim, std::uint64_t seed);

/// Seed-deterministic Haar sample from SO(n)_H, the pointwise stabilizer of
/// H: identity on H, a Haar-distributed special-orthogonal rotation on
/// H^perp. Requires dim H <= n - 2, otherwise the stabilizer in SO(n) is
/// trivial.
OrthogonalMap stabilizer_sample(const Subspace& h, std::uint64_t seed);

/// Product of the selected factors applied left-to-right as maps: the first
/// letter acts on the point first, so word({A,B}, {0,1}) is the map B∘A.
OrthogonalMap word(const std::vector<OrthogonalMap>& factors,
                   const std::vector<int>& letters);

/// Closed-form (R_{H2} R_{H1})^m x through the principal-angle frame:
/// each principal 2-plane rotates by 2 m alpha_j, the H1-complement block y1
/// flips sign with the parity of m, and the (H1+H2)-orthogonal part y2 is
/// untouched. O(1) in m once the frame is computed.
Vector double_reflection_power(const Subspace& h1, const Subspace& h2,
                               const Vector& x, long m);

/// Result of breadth-first closure enumeration over a generator set.
struct FiniteClosureReport {
  enum class Outcome { Finite, ExceededCap };

  Outcome outcome;
  int order = 0;  // element count when Finite
  int cap = 0;
  int generators_count = 0;
  double dedup_tol = tol::kDedup;
  /// Retained closure elements when Finite (closed under every generator
  /// within dedup_tol); empty on ExceededCap.
  std::vector<Eigen::MatrixXd> elements;

  bool finite() const { return outcome == Outcome::Finite; }
};

/// Enumerates products of the generators breadth-first, merging matrices
/// whose max-entry distance is below dedup_tol. Stabilization with at most
/// `cap` elements certifies a finite group of that order; breaching the cap
/// is evidence (not proof) that the generated group is infinite.
FiniteClosureReport finite_closure(const std::vector<OrthogonalMap>& generators,
                                   int cap = 10000, double dedup_tol = tol::kDedup);

}  // namespace symclose
