#include "symclose/witness.hpp"

#include <algorithm>
#include <cmath>

#include "symclose/errors.hpp"

namespace symclose {

namespace {

constexpr double kTiltCos = 1.0 / 3.0;  // certified irrational angle
const double kTiltSin = std::sqrt(8.0) / 3.0;

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

Mode WitnessConfig::check_mode() const {
  if (mode == WitnessMode::Rotation) return Mode::Rotations;
  int d = subspaces.empty() ? 0 : subspaces.front().dim();
  if (d == 1) return Mode::Lines;
  if (d == ambient_dim - 1) return Mode::Hyperplanes;
  return Mode::MidReflections;
}

std::vector<Subspace> CounterexampleConfig::family() const {
  std::vector<Subspace> all;
  for (const auto& part : parts)
    all.insert(all.end(), part.begin(), part.end());
  return all;
}

WitnessConfig lines_witness(int n) {
  if (n < 2) throw BadDimension("lines_witness: n must be >= 2");
  if (n > tol::kMaxAmbientDim) throw BadDimension("lines_witness: n too large");

  WitnessConfig config;
  config.ambient_dim = n;
  config.mode = WitnessMode::Reflection;
  config.theorem_tag = "lines-certified-irrational-pair";
  config.angle_specs = {Rational(1, 3)};

  Vector prev = Vector::Zero(n);
  prev[0] = 1.0;
  config.subspaces.push_back(Subspace::line(prev));
  for (int j = 1; j < n; ++j) {
    Vector next = kTiltCos * prev;
    next[j] += kTiltSin;
    config.subspaces.push_back(Subspace::line(next));
    prev = next;
  }
  return config;
}

WitnessConfig hyperplanes_witness(int n) {
  WitnessConfig config = lines_witness(n);
  config.theorem_tag = "hyperplanes-dual-to-lines";
  for (auto& h : config.subspaces) h = perp(h);
  return config;
}

WitnessConfig reflection_witness(int n, int i) {
  if (i < 2 || i > n - 2)
    throw BadDimension("reflection_witness: requires 2 <= i <= n-2");
  if (n > tol::kMaxAmbientDim) throw BadDimension("reflection_witness: n too large");

  if (2 * i > n) {
    WitnessConfig config = reflection_witness(n, n - i);
    for (auto& h : config.subspaces) h = perp(h);
    return config;
  }

  WitnessConfig config;
  config.ambient_dim = n;
  config.mode = WitnessMode::Reflection;
  config.theorem_tag = "mid-reflections-canonical-chain";

  std::vector<double> cos_a(static_cast<size_t>(i)), sin_a(static_cast<size_t>(i));
  for (int j = 0; j < i; ++j) {
    // alpha_j = arccos(1/(2j+3)) for j = 0..i-1: increasing, jointly
    // independent of pi only heuristically.
    long long den = 2LL * (j + 1) + 1;
    config.angle_specs.emplace_back(1, den);
    cos_a[static_cast<size_t>(j)] = 1.0 / static_cast<double>(den);
    sin_a[static_cast<size_t>(j)] =
        std::sqrt(1.0 - cos_a[static_cast<size_t>(j)] * cos_a[static_cast<size_t>(j)]);
  }

  // The three pattern subspaces inside span{e_0..e_{2i-1}}.
  Eigen::MatrixXd b1 = Eigen::MatrixXd::Zero(n, i);
  Eigen::MatrixXd b2 = Eigen::MatrixXd::Zero(n, i);
  Eigen::MatrixXd b3 = Eigen::MatrixXd::Zero(n, i);
  for (int j = 0; j < i; ++j) {
    b1(2 * j, j) = 1.0;
    b2(2 * j, j) = cos_a[static_cast<size_t>(j)];
    b2(2 * j + 1, j) = sin_a[static_cast<size_t>(j)];
    b3(2 * j, j) = cos_a[static_cast<size_t>(j)];
    int partner = (j == 0) ? 2 * i - 1 : 2 * j - 1;
    b3(partner, j) = sin_a[static_cast<size_t>(j)];
  }
  config.subspaces.emplace_back(n, std::move(b1));
  config.subspaces.emplace_back(n, std::move(b2));
  config.subspaces.emplace_back(n, std::move(b3));

  // Extensions: tilt fresh coordinate axes toward the current span so each
  // step adds its full dimension and meets the previous complement trivially.
  int covered = 2 * i;
  while (covered < n) {
    int fresh = std::min(i, n - covered);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, i);
    for (int l = 0; l < i; ++l) {
      if (l < fresh) {
        b(l, l) = kTiltCos;
        b(covered + l, l) = kTiltSin;
      } else {
        b(l, l) = 1.0;
      }
    }
    config.subspaces.emplace_back(n, std::move(b));
    covered += fresh;
  }
  return config;
}

WitnessConfig rotation_witness(int n, int i) {
  if (i < 1 || i > n - 2)
    throw BadDimension("rotation_witness: requires 1 <= i <= n-2");
  if (n > tol::kMaxAmbientDim) throw BadDimension("rotation_witness: n too large");

  const int d = n - i;  // complement dimension, >= 2
  WitnessConfig config;
  config.ambient_dim = n;
  config.mode = WitnessMode::Rotation;
  config.theorem_tag = "rotation-stabilizer-chain";
  config.angle_specs = {Rational(1, 3)};

  std::vector<Subspace> complements;
  complements.push_back(Subspace::coordinate(n, [&] {
    std::vector<int> axes(static_cast<size_t>(d));
    for (int l = 0; l < d; ++l) axes[static_cast<size_t>(l)] = l;
    return axes;
  }()));

  int covered = d;
  while (covered < n) {
    int fresh = std::min(d, n - covered);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, d);
    b(covered - 1, 0) = kTiltCos;  // couples to the previous block
    b(covered, 0) = kTiltSin;
    for (int l = 1; l < fresh; ++l) b(covered + l, l) = 1.0;
    for (int l = fresh; l < d; ++l) b(covered - 1 - (l - fresh + 1), l) = 1.0;
    complements.emplace_back(n, std::move(b));
    covered += fresh;
  }

  for (const auto& g : complements) config.subspaces.push_back(perp(g));
  return config;
}

WitnessConfig witness_for(int n, int i, WitnessMode mode) {
  if (mode == WitnessMode::Rotation) return rotation_witness(n, i);
  if (i == 1) return lines_witness(n);
  if (i == n - 1) return hyperplanes_witness(n);
  return reflection_witness(n, i);
}

CounterexampleConfig counterexample(int n, const std::vector<int>& part1_dims,
                                    const std::vector<int>& part2_dims) {
  if (n < 3 || n > tol::kMaxAmbientDim)
    throw BadDimension("counterexample: n must be in [3, 64]");
  if (part1_dims.empty())
    throw BadPartition("counterexample: first part must be nonempty");
  auto check_dims = [&](const std::vector<int>& dims) {
    for (int i : dims)
      if (i < 1 || i > n - 2)
        throw BadPartition("counterexample: subspace dims must lie in [1, n-2]");
  };
  check_dims(part1_dims);
  check_dims(part2_dims);

  // Part-1 complements live in the tail block B1, part-2 complements in the
  // head block B2.
  int b1 = 0;
  for (int i : part1_dims) b1 = std::max(b1, n - i);
  const int b2 = n - b1;
  for (int i : part2_dims)
    if (n - i > b2)
      throw BadPartition("counterexample: part-2 blocks overflow the ambient space");

  auto head_axes = [&](int count, int offset) {
    std::vector<int> axes;
    for (int a = 0; a < count; ++a) axes.push_back(offset + a);
    return axes;
  };

  CounterexampleConfig config;
  config.ambient_dim = n;
  config.parts.resize(2);

  for (int i : part1_dims) {
    // Contains all of B2 plus the first i - b2 axes of B1.
    std::vector<int> axes = head_axes(b2, 0);
    for (int a = 0; a < i - b2; ++a) axes.push_back(b2 + a);
    config.parts[0].push_back(Subspace::coordinate(n, axes));
  }
  for (int i : part2_dims) {
    // Contains all of B1 plus the first i - b1 axes of B2.
    std::vector<int> axes = head_axes(i - b1, 0);
    for (int a = 0; a < b1; ++a) axes.push_back(b2 + a);
    config.parts[1].push_back(Subspace::coordinate(n, axes));
  }

  // Conserved quantities live on the spans of each part's complements; for
  // an empty second part the leftover block plays that role.
  Subspace s1 = perp(config.parts[0].front());
  for (size_t j = 1; j < config.parts[0].size(); ++j)
    s1 = sum(s1, perp(config.parts[0][j]));
  Subspace s2 = config.parts[1].empty() ? perp(s1) : perp(config.parts[1].front());
  for (size_t j = 1; j < config.parts[1].size(); ++j)
    s2 = sum(s2, perp(config.parts[1][j]));
  config.part_spans.push_back(std::move(s1));
  config.part_spans.push_back(std::move(s2));
  for (int m = 0; m < 2; ++m)
    config.invariant_description.push_back(
        "norm of the projection onto the dim-" +
        std::to_string(config.part_spans[static_cast<size_t>(m)].dim()) +
        " span of part-" + std::to_string(m + 1) + " complements is conserved");
  return config;
}

int reflection_witness_count(int n, int i) {
  if (i < 1 || i > n - 1) throw BadDimension("reflection_witness_count: bad i");
  if (i == 1 || i == n - 1) return n;
  if (2 * i <= n) return ceil_div(n, i) + 1;
  return ceil_div(n, n - i) + 1;
}

int rotation_witness_count(int n, int i) {
  if (i < 1 || i > n - 2) throw BadDimension("rotation_witness_count: bad i");
  return ceil_div(n, n - i);
}

TetrahedronFixture tetrahedron_fixture() {
  TetrahedronFixture fixture;
  const double s = 1.0 / std::sqrt(3.0);
  auto vertex = [&](double x, double y, double z) {
    Vector v(3);
    v << x * s, y * s, z * s;
    return v;
  };
  fixture.vertices = {vertex(1, 1, 1), vertex(1, -1, -1), vertex(-1, 1, -1),
                      vertex(-1, -1, 1)};
  // A tetrahedron has three opposite edge pairs; their midpoint lines are the
  // coordinate axes in this embedding.
  for (int a = 0; a < 3; ++a)
    fixture.midlines.push_back(Subspace::coordinate(3, {a}));
  return fixture;
}

}  // namespace symclose
