#include "symclose/isometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <deque>
#include <map>

#include "symclose/errors.hpp"
#include "symclose/rng.hpp"

namespace symclose {

OrthogonalMap::OrthogonalMap(Eigen::MatrixXd matrix, Provenance prov)
    : matrix_(std::move(matrix)), prov_(std::move(prov)) {
  if (matrix_.rows() != matrix_.cols())
    throw BadDimension("orthogonal map matrix must be square");
  if (orthogonality_defect() > tol::kMap)
    throw Error("matrix is not orthogonal within tolerance");
}

OrthogonalMap OrthogonalMap::identity(int ambient_dim) {
  return OrthogonalMap(Eigen::MatrixXd::Identity(ambient_dim, ambient_dim),
                       provenance::Identity{});
}

Subspace OrthogonalMap::apply(const Subspace& h) const {
  if (h.ambient_dim() != ambient_dim())
    throw DimensionMismatch("apply: ambient dimensions differ");
  return Subspace(h.ambient_dim(), matrix_ * h.basis());
}

double OrthogonalMap::orthogonality_defect() const {
  Eigen::MatrixXd g = matrix_.transpose() * matrix_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

OrthogonalMap reflection(const Subspace& h) {
  const int n = h.ambient_dim();
  Eigen::MatrixXd m = 2.0 * h.projector() - Eigen::MatrixXd::Identity(n, n);
  if (h.dim() == 0) return OrthogonalMap(std::move(m), provenance::PointReflection{});
  return OrthogonalMap(std::move(m), provenance::Reflection{h});
}

Eigen::MatrixXd haar_special_orthogonal(int dim, std::uint64_t seed) {
  rng::Stream stream(seed);
  if (dim == 2) {  // SO(2) is the uniform rotation angle
    double angle = 2.0 * M_PI * stream.uniform();
    Eigen::MatrixXd q(2, 2);
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return q;
  }
  Eigen::MatrixXd g = stream.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(dim - 1) = -q.col(dim - 1);
  return q;
}

OrthogonalMap stabilizer_sample(const Subspace& h, std::uint64_t seed) {
  const int n = h.ambient_dim();
  const int d = n - h.dim();
  if (d < 2)
    throw TrivialStabilizer("stabilizer_sample requires dim H <= n - 2");

  Eigen::MatrixXd q = haar_special_orthogonal(d, rng::mix(seed, 0x7374616253616d70ULL));
  Eigen::MatrixXd w = perp(h).basis();  // n x d
  Eigen::MatrixXd m = h.projector() + w * q * w.transpose();
  return OrthogonalMap(std::move(m), provenance::StabilizerSample{h, seed});
}

OrthogonalMap word(const std::vector<OrthogonalMap>& factors,
                   const std::vector<int>& letters) {
  if (factors.empty()) throw EmptyGenerators("word: no factors");
  const int n = factors.front().ambient_dim();
  for (const auto& f : factors)
    if (f.ambient_dim() != n)
      throw DimensionMismatch("word: factors have mixed ambient dimensions");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
  for (int l : letters) {
    if (l < 0 || l >= static_cast<int>(factors.size()))
      throw IndexOutOfRange("word: letter " + std::to_string(l) +
                            " does not index a factor");
    acc = factors[static_cast<size_t>(l)].matrix() * acc;
  }
  return OrthogonalMap(std::move(acc), provenance::Word{letters});
}

Vector double_reflection_power(const Subspace& h1, const Subspace& h2,
                               const Vector& x, long m) {
  if (m < 0) throw Error("double_reflection_power: m must be >= 0");
  if (h1.ambient_dim() != h2.ambient_dim() ||
      h1.ambient_dim() != static_cast<int>(x.size()))
    throw DimensionMismatch("double_reflection_power: dimensions differ");

  PrincipalAngleDecomposition pad = principal_angles(h1, h2);
  PointDecomposition parts = pad.decompose(x);
  for (int j = 0; j < pad.dim_h2(); ++j)
    parts.theta[j] += 2.0 * static_cast<double>(m) * pad.angles()[j];
  if (m % 2 != 0) parts.y1 = -parts.y1;
  return pad.recompose(parts);
}

namespace {

// Index over stored matrices keyed by trace so candidate comparisons stay
// near-constant instead of scanning the whole set.
class DedupIndex {
 public:
  DedupIndex(int n, double tol) : slack_(tol * n), tol_(tol) {}

  int find(const std::vector<Eigen::MatrixXd>& pool, const Eigen::MatrixXd& m) const {
    double tr = m.trace();
    auto lo = by_trace_.lower_bound(tr - slack_);
    auto hi = by_trace_.upper_bound(tr + slack_);
    for (auto it = lo; it != hi; ++it) {
      const Eigen::MatrixXd& cand = pool[static_cast<size_t>(it->second)];
      if ((cand - m).cwiseAbs().maxCoeff() < tol_) return it->second;
    }
    return -1;
  }

  void insert(const Eigen::MatrixXd& m, int idx) { by_trace_.emplace(m.trace(), idx); }

 private:
  std::multimap<double, int> by_trace_;
  double slack_;
  double tol_;
};

}  // namespace

FiniteClosureReport finite_closure(const std::vector<OrthogonalMap>& generators,
                                   int cap, double dedup_tol) {
  if (generators.empty()) throw EmptyGenerators("finite_closure: no generators");
  if (cap < 1) throw InvalidCap("finite_closure: cap must be >= 1");
  const int n = generators.front().ambient_dim();
  for (const auto& g : generators)
    if (g.ambient_dim() != n)
      throw DimensionMismatch("finite_closure: generators have mixed dimensions");

  FiniteClosureReport report;
  report.cap = cap;
  report.generators_count = static_cast<int>(generators.size());
  report.dedup_tol = dedup_tol;

  std::vector<Eigen::MatrixXd> elements;
  DedupIndex index(n, dedup_tol);
  elements.push_back(Eigen::MatrixXd::Identity(n, n));
  index.insert(elements.back(), 0);

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int at = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      Eigen::MatrixXd next = g.matrix() * elements[static_cast<size_t>(at)];
      if (index.find(elements, next) >= 0) continue;
      if (static_cast<int>(elements.size()) >= cap) {
        report.outcome = FiniteClosureReport::Outcome::ExceededCap;
        return report;
      }
      int idx = static_cast<int>(elements.size());
      elements.push_back(std::move(next));
      index.insert(elements.back(), idx);
      frontier.push_back(idx);
    }
  }

  report.outcome = FiniteClosureReport::Outcome::Finite;
  report.order = static_cast<int>(elements.size());
  report.elements = std::move(elements);
  return report;
}

}  // namespace symclose
