#pragma once

#include <doctest.h>

#include <Eigen/Dense>

#include <vector>

#include "symclose/rng.hpp"
#include "symclose/subspace.hpp"

namespace testsupport {

inline symclose::Vector random_unit(symclose::rng::Stream& stream, int n) {
  return stream.unit_vector(n);
}

/// Random subspace of the requested dimension (Gaussian span, orthonormalized).
inline symclose::Subspace random_subspace(symclose::rng::Stream& stream, int n,
                                          int dim) {
  std::vector<symclose::Vector> vectors;
  for (int j = 0; j < dim; ++j) vectors.push_back(stream.gaussian_vector(n));
  symclose::Subspace s = symclose::orthonormalize(vectors);
  REQUIRE(s.dim() == dim);
  return s;
}

/// Independent rank oracle: singular values of the stacked bases.
inline int rank_oracle(const std::vector<symclose::Subspace>& subspaces) {
  int total = 0;
  for (const auto& h : subspaces) total += h.dim();
  if (total == 0) return 0;
  Eigen::MatrixXd stacked(subspaces.front().ambient_dim(), total);
  int at = 0;
  for (const auto& h : subspaces) {
    stacked.middleCols(at, h.dim()) = h.basis();
    at += h.dim();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  int rank = 0;
  for (int j = 0; j < svd.singularValues().size(); ++j)
    if (svd.singularValues()(j) > 1e-8 * svd.singularValues()(0)) ++rank;
  return rank;
}

}  // namespace testsupport
