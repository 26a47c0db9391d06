#pragma once

namespace symclose::tol {

// Orthonormality of stored bases, unit-norm checks, subsphere geometry.
inline constexpr double kOrtho = 1e-9;

// Singular values below sqrt(kOrtho) count as 0 and above 1 - sqrt(kOrtho)
// as 1 when clamping cosines into [0, 1].
inline constexpr double kCosineClamp = 3.1622776601683795e-5;  // sqrt(kOrtho)

// Rank decisions: singular values below kRankRel * sigma_max are zero.
inline constexpr double kRankRel = 1e-8;

// Subspace equality: residual per basis vector after cross-projection.
inline constexpr double kSubspaceEq = 1e-8;

// Orthogonality defect allowed in an OrthogonalMap (max-abs entry of QtQ - I).
inline constexpr double kMap = 1e-9;

// Edge threshold of the orthogonality graph: subspaces closer than this to
// mutually orthogonal are treated as NOT orthogonal (edge present).
inline constexpr double kOrthEdge = 1e-9;

// Matrix deduplication distance in finite-closure enumeration.
inline constexpr double kDedup = 1e-6;

// Conserved-quantity variation below this counts as confinement evidence.
inline constexpr double kConserve = 1e-8;

// Ambient dimensions above this are rejected up front.
inline constexpr int kMaxAmbientDim = 64;

}  // namespace symclose::tol
