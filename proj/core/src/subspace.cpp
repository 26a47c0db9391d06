#include "symclose/subspace.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "symclose/errors.hpp"

namespace symclose {

namespace {

void check_ambient(int n) {
  if (n < 2 || n > tol::kMaxAmbientDim)
    throw BadDimension("ambient dimension must be in [2, " +
                       std::to_string(tol::kMaxAmbientDim) + "], got " +
                       std::to_string(n));
}

void check_same_ambient(int a, int b, const char* what) {
  if (a != b)
    throw DimensionMismatch(std::string(what) + ": ambient dimensions differ (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
}

// Orthonormal basis of the column space of m, rank-thresholded at
// kRankRel * sigma_max.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cutoff = sv.size() > 0 ? sv(0) * tol::kRankRel : 0.0;
  int rank = 0;
  for (int j = 0; j < sv.size(); ++j)
    if (sv(j) > cutoff && sv(j) > 0.0) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Orthonormal basis of the orthogonal complement of the (orthonormal)
// columns of m in R^n.
Eigen::MatrixXd complement_of(const Eigen::MatrixXd& m, int n) {
  if (m.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  if (m.cols() == n) return Eigen::MatrixXd(n, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - m.cols());
}

}  // namespace

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {
  check_ambient(ambient_dim);
}

Subspace::Subspace(int ambient_dim, Eigen::MatrixXd basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  check_ambient(ambient_dim);
  if (basis_.rows() != ambient_dim_)
    throw DimensionMismatch("basis rows do not match ambient dimension");
  if (basis_.cols() > ambient_dim_)
    throw BadDimension("more basis vectors than ambient dimension");
  if (gram_defect() > tol::kOrtho)
    throw Error("basis is not orthonormal within tolerance; use orthonormalize()");
}

Subspace Subspace::full(int ambient_dim) {
  check_ambient(ambient_dim);
  return Subspace(ambient_dim, Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::coordinate(int ambient_dim, const std::vector<int>& axes) {
  check_ambient(ambient_dim);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(ambient_dim, static_cast<int>(axes.size()));
  for (int j = 0; j < static_cast<int>(axes.size()); ++j) {
    if (axes[j] < 0 || axes[j] >= ambient_dim)
      throw BadDimension("coordinate axis out of range");
    b(axes[j], j) = 1.0;
  }
  return Subspace(ambient_dim, std::move(b));
}

Subspace Subspace::line(const Vector& direction) {
  check_ambient(static_cast<int>(direction.size()));
  double nrm = direction.norm();
  if (nrm < tol::kOrtho) return Subspace(static_cast<int>(direction.size()));
  Eigen::MatrixXd b = direction / nrm;
  return Subspace(static_cast<int>(direction.size()), std::move(b));
}

Vector Subspace::project(const Vector& x) const {
  check_same_ambient(static_cast<int>(x.size()), ambient_dim_, "project");
  if (dim() == 0) return Vector::Zero(ambient_dim_);
  return basis_ * (basis_.transpose() * x);
}

Eigen::MatrixXd Subspace::projector() const { return basis_ * basis_.transpose(); }

double Subspace::gram_defect() const {
  if (dim() == 0) return 0.0;
  Eigen::MatrixXd g = basis_.transpose() * basis_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

double Subspace::residual(const Vector& x) const { return (x - project(x)).norm(); }

bool Subspace::same_span(const Subspace& other) const {
  if (ambient_dim_ != other.ambient_dim_ || dim() != other.dim()) return false;
  for (int j = 0; j < other.dim(); ++j)
    if (residual(other.basis_.col(j)) >= tol::kSubspaceEq) return false;
  for (int j = 0; j < dim(); ++j)
    if (other.residual(basis_.col(j)) >= tol::kSubspaceEq) return false;
  return true;
}

bool Subspace::contained_in(const Subspace& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  for (int j = 0; j < dim(); ++j)
    if (other.residual(basis_.col(j)) >= tol::kSubspaceEq) return false;
  return true;
}

Subspace orthonormalize(const std::vector<Vector>& vectors, double tol) {
  if (vectors.empty())
    throw BadDimension("orthonormalize: cannot infer ambient dimension from empty input");
  int n = static_cast<int>(vectors.front().size());
  check_ambient(n);
  for (const auto& v : vectors)
    check_same_ambient(static_cast<int>(v.size()), n, "orthonormalize");

  Eigen::MatrixXd basis(n, 0);
  for (const auto& v : vectors) {
    Vector r = v;
    // Two projection-removal passes keep the result orthonormal well below
    // kOrtho even for nearly dependent input.
    for (int pass = 0; pass < 2; ++pass)
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
    double nrm = r.norm();
    if (nrm < tol) continue;  // dependent vector: dimension simply drops
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / nrm;
  }
  return Subspace(n, std::move(basis));
}

Subspace sum(const Subspace& h1, const Subspace& h2) {
  check_same_ambient(h1.ambient_dim(), h2.ambient_dim(), "sum");
  if (h1.dim() == 0) return h2;
  if (h2.dim() == 0) return h1;
  Eigen::MatrixXd stacked(h1.ambient_dim(), h1.dim() + h2.dim());
  stacked << h1.basis(), h2.basis();
  return Subspace(h1.ambient_dim(), column_space(stacked));
}

Subspace intersect(const Subspace& h1, const Subspace& h2) {
  check_same_ambient(h1.ambient_dim(), h2.ambient_dim(), "intersect");
  return perp(sum(perp(h1), perp(h2)));
}

Subspace perp(const Subspace& h) {
  return Subspace(h.ambient_dim(), complement_of(h.basis(), h.ambient_dim()));
}

Vector project(const Vector& x, const Subspace& h) { return h.project(x); }

SubSphere subsphere(const Subspace& v, const Vector& x) {
  check_same_ambient(static_cast<int>(x.size()), v.ambient_dim(), "subsphere");
  if (std::abs(x.norm() - 1.0) > tol::kOrtho)
    throw NotUnit("subsphere: |x| differs from 1 by more than tolerance");
  Vector center = x - v.project(x);
  double radius = std::sqrt(std::max(0.0, 1.0 - center.squaredNorm()));
  return SubSphere{v, std::move(center), radius};
}

PrincipalAngleDecomposition::PrincipalAngleDecomposition(int k, int i,
                                                         Eigen::VectorXd angles,
                                                         Eigen::MatrixXd adapted_basis,
                                                         std::vector<int> slots)
    : k_(k), i_(i), angles_(std::move(angles)), basis_(std::move(adapted_basis)),
      slots_(std::move(slots)) {}

Subspace PrincipalAngleDecomposition::reconstruct_h1() const {
  return Subspace(static_cast<int>(basis_.rows()), basis_.leftCols(k_));
}

Subspace PrincipalAngleDecomposition::reconstruct_h2() const {
  int n = static_cast<int>(basis_.rows());
  Eigen::MatrixXd b(n, i_);
  for (int j = 0; j < i_; ++j) {
    Vector col = std::cos(angles_[j]) * basis_.col(j);
    if (slots_[static_cast<size_t>(j)] >= 0)
      col += std::sin(angles_[j]) * basis_.col(slots_[static_cast<size_t>(j)]);
    b.col(j) = col.normalized();
  }
  return Subspace(n, std::move(b));
}

PointDecomposition PrincipalAngleDecomposition::decompose(const Vector& x) const {
  int n = static_cast<int>(basis_.rows());
  check_same_ambient(static_cast<int>(x.size()), n, "decompose");
  PointDecomposition parts;
  parts.rho.resize(i_);
  parts.theta.resize(i_);
  Vector remainder = x;
  for (int j = 0; j < i_; ++j) {
    double a = basis_.col(j).dot(x);
    double b = 0.0;
    int s = slots_[static_cast<size_t>(j)];
    if (s >= 0) b = basis_.col(s).dot(x);
    parts.rho[j] = std::hypot(a, b);
    double theta = (parts.rho[j] > 0.0) ? std::atan2(b, a) : 0.0;
    if (theta < 0.0) theta += 2.0 * M_PI;
    parts.theta[j] = theta;
    remainder -= a * basis_.col(j);
    if (s >= 0) remainder -= b * basis_.col(s);
  }
  parts.y1 = Vector::Zero(n);
  for (int c = i_; c < k_; ++c) {
    double a = basis_.col(c).dot(x);
    parts.y1 += a * basis_.col(c);
    remainder -= a * basis_.col(c);
  }
  parts.y2 = std::move(remainder);
  return parts;
}

Vector PrincipalAngleDecomposition::recompose(const PointDecomposition& parts) const {
  Vector x = parts.y1 + parts.y2;
  for (int j = 0; j < i_; ++j) {
    x += parts.rho[j] * std::cos(parts.theta[j]) * basis_.col(j);
    int s = slots_[static_cast<size_t>(j)];
    if (s >= 0) x += parts.rho[j] * std::sin(parts.theta[j]) * basis_.col(s);
  }
  return x;
}

PrincipalAngleDecomposition principal_angles(const Subspace& h1, const Subspace& h2) {
  check_same_ambient(h1.ambient_dim(), h2.ambient_dim(), "principal_angles");
  const int n = h1.ambient_dim();
  const int k = h1.dim();
  const int i = h2.dim();
  if (i == 0) throw ZeroDimensional("principal_angles: second subspace is {o}");
  if (k < i)
    throw BadDimension("principal_angles: dim(H1) must be >= dim(H2); swap arguments");

  Eigen::MatrixXd cross = h1.basis().transpose() * h2.basis();  // k x i
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);

  // Principal directions: first i columns pair with H2, the rest complete H1.
  Eigen::MatrixXd u = h1.basis() * svd.matrixU();  // n x k
  Eigen::MatrixXd v = h2.basis() * svd.matrixV();  // n x i

  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n);
  basis.leftCols(k) = u;

  Eigen::VectorXd angles(i);
  std::vector<int> slots(static_cast<size_t>(i), -1);
  std::vector<int> deferred;  // paired columns still awaiting a direction

  for (int j = 0; j < i; ++j) {
    double c = u.col(j).dot(v.col(j));
    Vector w = v.col(j) - c * u.col(j);
    double s = w.norm();
    // atan2 keeps tiny angles accurate where acos of the singular value
    // loses half the digits.
    c = std::clamp(c, 0.0, 1.0);
    angles[j] = std::atan2(s, c);
    int slot = i + k - 1 - j;  // e_{i+k+1-j} of the canonical form, 0-based
    if (slot >= n) continue;   // forced zero angle when i + k > n
    if (s >= 1e-13) {
      basis.col(slot) = w / s;
      slots[static_cast<size_t>(j)] = slot;
    } else {
      deferred.push_back(j);
    }
  }

  // Fill deferred pair slots and leftover columns with an orthonormal
  // complement of everything assigned so far.
  std::vector<int> open_columns;
  for (int j : deferred) open_columns.push_back(i + k - 1 - j);
  for (int c = k; c < n; ++c) {
    bool taken = false;
    for (int j = 0; j < i; ++j)
      if (slots[static_cast<size_t>(j)] == c) taken = true;
    for (int oc : open_columns)
      if (oc == c) taken = true;
    if (!taken) open_columns.push_back(c);
  }
  std::sort(open_columns.begin(), open_columns.end());
  if (!open_columns.empty()) {
    Eigen::MatrixXd assigned(n, n - static_cast<int>(open_columns.size()));
    int a = 0;
    for (int c = 0; c < n; ++c) {
      if (std::binary_search(open_columns.begin(), open_columns.end(), c)) continue;
      assigned.col(a++) = basis.col(c);
    }
    Eigen::MatrixXd fill = complement_of(assigned, n);
    for (size_t idx = 0; idx < open_columns.size(); ++idx)
      basis.col(open_columns[idx]) = fill.col(static_cast<int>(idx));
  }
  for (int j : deferred) slots[static_cast<size_t>(j)] = i + k - 1 - j;

  return PrincipalAngleDecomposition(k, i, std::move(angles), std::move(basis),
                                     std::move(slots));
}

}  // namespace symclose
