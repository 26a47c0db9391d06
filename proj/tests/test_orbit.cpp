#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "symclose/errors.hpp"
#include "symclose/orbit.hpp"
#include "symclose/witness.hpp"
#include "test_support.hpp"

using namespace symclose;
using testsupport::random_subspace;
using testsupport::random_unit;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

Subspace mirror_line2(double angle) {
  return Subspace::line(vec2(std::cos(angle), std::sin(angle)));
}

SubSphere full_sphere(int n) {
  return SubSphere{Subspace::full(n), Vector::Zero(n), 1.0};
}

int distinct_points(const OrbitSample& sample, double merge_tol) {
  std::vector<Vector> reps;
  for (const auto& p : sample.points) {
    bool found = false;
    for (const auto& r : reps)
      if ((p - r).norm() < merge_tol) {
        found = true;
        break;
      }
    if (!found) reps.push_back(p);
  }
  return static_cast<int>(reps.size());
}

}  // namespace

TEST_CASE("identity generator keeps the orbit at the seed point") {
  Vector x = vec2(1, 0);
  auto sample = sample_orbit({OrthogonalMap::identity(2)}, x, 50, {});
  for (const auto& p : sample.points) CHECK((p - x).norm() == 0.0);
}

TEST_CASE("orbit sampling guards") {
  Vector x = vec2(1, 0);
  CHECK_THROWS_AS(sample_orbit({}, x, 10, {}), EmptyGenerators);
  CHECK_THROWS_AS(sample_orbit({OrthogonalMap::identity(2)}, vec2(2, 0), 10, {}),
                  NotUnit);
}

TEST_CASE("square dihedral orbit has exactly eight points") {
  std::vector<Generator> mirrors = {reflection(mirror_line2(0.0)),
                                    reflection(mirror_line2(M_PI / 4))};
  Vector x = vec2(std::cos(0.31), std::sin(0.31));  // generic seed
  auto sample = sample_orbit(mirrors, x, 10000, {});
  CHECK(distinct_points(sample, 1e-6) == 8);
}

TEST_CASE("alternating powers reproduce the planted irrational rotation") {
  double alpha = std::acos(1.0 / 3.0);
  std::vector<Generator> mirrors = {reflection(mirror_line2(0.0)),
                                    reflection(mirror_line2(alpha))};
  Vector x = vec2(1, 0);
  WordPolicy policy;
  policy.kind = WordPolicy::Kind::AlternatingPowers;
  auto sample = sample_orbit(mirrors, x, 10000, policy);

  // Direct oracle: iterate the rotation by 2*alpha.
  double c = std::cos(2 * alpha), s = std::sin(2 * alpha);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  Vector v = x;
  for (int m = 0; m < 100; ++m) {
    CHECK((sample.points[static_cast<size_t>(m)] - v).norm() < 1e-9);
    v = rot * v;
  }

  double radius = covering_radius(sample, full_sphere(2), 1000, 9);
  CHECK(radius < 0.01);
}

TEST_CASE("covering radius extreme cases") {
  OrbitSample single;
  single.seed_point = vec2(1, 0);
  single.points = {vec2(1, 0)};
  double antipodal = covering_radius(single, full_sphere(2), 1000, 17);
  CHECK(antipodal == doctest::Approx(2.0).epsilon(0.01));

  rng::Stream stream(301);
  OrbitSample uniform;
  uniform.seed_point = random_unit(stream, 3);
  for (int j = 0; j < 10000; ++j) uniform.points.push_back(random_unit(stream, 3));
  CHECK(covering_radius(uniform, full_sphere(3), 2000, 17) < 0.1);

  OrbitSample circle;
  circle.seed_point = vec3(1, 0, 0);
  for (int j = 0; j < 10000; ++j) {
    double t = 2.0 * M_PI * j / 10000.0;
    circle.points.push_back(vec3(std::cos(t), std::sin(t), 0));
  }
  double poles = covering_radius(circle, full_sphere(3), 2000, 17);
  CHECK(poles == doctest::Approx(std::sqrt(2.0)).epsilon(0.05 / std::sqrt(2.0)));
}

TEST_CASE("covering radius guards") {
  OrbitSample sample;
  sample.seed_point = vec2(1, 0);
  sample.points = {vec2(1, 0)};
  SubSphere degenerate = subsphere(Subspace::coordinate(2, {0}), vec2(0, 1));
  CHECK_THROWS_AS(covering_radius(sample, degenerate, 10, 1), DegenerateTarget);
  OrbitSample empty;
  empty.seed_point = vec2(1, 0);
  CHECK_THROWS_AS(covering_radius(empty, full_sphere(2), 10, 1), Error);
}

TEST_CASE("covering radius never grows as the sample grows") {
  rng::Stream stream(307);
  OrbitSample small;
  small.seed_point = random_unit(stream, 3);
  for (int j = 0; j < 200; ++j) small.points.push_back(random_unit(stream, 3));
  OrbitSample big = small;
  for (int j = 0; j < 800; ++j) big.points.push_back(random_unit(stream, 3));
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    double before = covering_radius(small, full_sphere(3), 500, seed);
    double after = covering_radius(big, full_sphere(3), 500, seed);
    CHECK(after <= before + 1e-15);
  }
}

TEST_CASE("orbit points stay unit norm and conserve the complement component") {
  rng::Stream stream(311);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 5;
    Subspace h1 = random_subspace(stream, n, 2);
    Subspace h2 = random_subspace(stream, n, 1);
    Vector x = random_unit(stream, n);
    auto sample = sample_orbit({reflection(h1), reflection(h2)}, x, 2000, {});
    Subspace outside = perp(sum(h1, h2));
    double reference = outside.project(x).norm();
    for (const auto& p : sample.points) {
      CHECK(std::abs(p.norm() - 1.0) < 1e-12);
      CHECK(std::abs(outside.project(p).norm() - reference) < 1e-10);
    }
  }
}

TEST_CASE("stabilizer orbits keep the projection onto the fixed subspace") {
  rng::Stream stream(313);
  Subspace h = random_subspace(stream, 4, 2);
  Vector x = random_unit(stream, 4);
  auto sample = sample_orbit({StabilizerSpec{h}}, x, 2000, {});
  Vector fixed = h.project(x);
  for (const auto& p : sample.points) CHECK((h.project(p) - fixed).norm() < 1e-9);
}

TEST_CASE("orbit sampling is deterministic regardless of worker count") {
  rng::Stream stream(317);
  Subspace h1 = random_subspace(stream, 3, 1);
  Subspace h2 = random_subspace(stream, 3, 1);
  Vector x = random_unit(stream, 3);

  setenv("SYMCLOSE_THREADS", "1", 1);
  auto serial = sample_orbit({reflection(h1), reflection(h2)}, x, 5000, {});
  setenv("SYMCLOSE_THREADS", "3", 1);
  auto parallel = sample_orbit({reflection(h1), reflection(h2)}, x, 5000, {});
  unsetenv("SYMCLOSE_THREADS");

  REQUIRE(serial.points.size() == parallel.points.size());
  for (size_t j = 0; j < serial.points.size(); ++j)
    CHECK((serial.points[j] - parallel.points[j]).norm() == 0.0);
}

TEST_CASE("duocylinder stabilizers are confined with conserved block norms") {
  auto config = counterexample(4, {2}, {2});
  std::vector<Generator> generators;
  for (const auto& h : config.family()) generators.push_back(StabilizerSpec{h});
  rng::Stream stream(331);
  Vector x = random_unit(stream, 4);
  auto sample = sample_orbit(generators, x, 20000, {});
  auto report = density_verdict(sample, full_sphere(4), 0.15, config.part_spans);
  CHECK(report.verdict == DensityReport::Verdict::Confined);
  REQUIRE(report.confining_candidate.has_value());
  REQUIRE(report.conserved.quantities.size() == 2);
  CHECK(report.conserved.quantities[0].max_deviation < 1e-9);
  CHECK(report.conserved.quantities[1].max_deviation < 1e-9);
}

TEST_CASE("rotation witness axes produce a dense orbit") {
  auto witness = rotation_witness(3, 1);
  std::vector<Generator> generators;
  for (const auto& h : witness.subspaces) generators.push_back(StabilizerSpec{h});
  rng::Stream stream(337);
  Vector x = random_unit(stream, 3);
  auto sample = sample_orbit(generators, x, 20000, {});
  auto report = density_verdict(sample, full_sphere(3), 0.15, {});
  CHECK(report.verdict == DensityReport::Verdict::Dense);
}

TEST_CASE("orthogonally split generator families are never judged dense") {
  // Randomized part layouts; the conserved block norm must block density.
  struct Layout {
    int n;
    std::vector<int> part1, part2;
  };
  const Layout layouts[] = {{4, {2}, {2}},    {5, {3}, {3}},  {5, {2, 3}, {3}},
                            {6, {4}, {2, 4}}, {6, {3}, {4}},  {4, {1}, {}}};
  std::uint64_t seed = 401;
  for (const auto& layout : layouts) {
    auto config = counterexample(layout.n, layout.part1, layout.part2);
    std::vector<Generator> generators;
    for (const auto& h : config.family()) generators.push_back(StabilizerSpec{h});
    rng::Stream stream(seed++);
    Vector x = random_unit(stream, layout.n);
    auto sample = sample_orbit(generators, x, 4000, {});
    auto report = density_verdict(sample, full_sphere(layout.n), 0.15,
                                  config.part_spans);
    CHECK(report.verdict != DensityReport::Verdict::Dense);
  }
}

TEST_CASE("insufficient evidence yields inconclusive, not confined") {
  auto config = counterexample(4, {2}, {2});
  std::vector<Generator> generators;
  for (const auto& h : config.family()) generators.push_back(StabilizerSpec{h});
  rng::Stream stream(347);
  Vector x = random_unit(stream, 4);
  auto sample = sample_orbit(generators, x, 10, {});
  auto report = density_verdict(sample, full_sphere(4), 0.15, config.part_spans);
  CHECK(report.verdict == DensityReport::Verdict::Inconclusive);
}

TEST_CASE("fall-through without candidates is inconclusive") {
  OrbitSample sparse;
  sparse.seed_point = vec3(1, 0, 0);
  sparse.points = {vec3(1, 0, 0), vec3(0, 1, 0)};
  auto report = density_verdict(sparse, full_sphere(3), 0.15, {});
  CHECK(report.verdict == DensityReport::Verdict::Inconclusive);
}

TEST_CASE("tetrahedron vertices: midline reflections preserve the set") {
  auto fixture = tetrahedron_fixture();
  std::vector<OrthogonalMap> mirrors;
  for (const auto& line : fixture.midlines) mirrors.push_back(reflection(line));
  auto result = invariance_check(fixture.vertices, mirrors, 1e-12);
  CHECK(result.invariant);
  CHECK(result.max_error < 1e-12);

  std::vector<OrthogonalMap> planes;
  for (const auto& line : fixture.midlines) planes.push_back(reflection(perp(line)));
  auto broken = invariance_check(fixture.vertices, planes, 1e-12);
  CHECK_FALSE(broken.invariant);
  CHECK(broken.max_error > 0.5);
}

TEST_CASE("orbits are invariant sets") {
  std::vector<OrthogonalMap> mirrors = {reflection(mirror_line2(0.0)),
                                        reflection(mirror_line2(M_PI / 4))};
  Vector x = vec2(std::cos(0.31), std::sin(0.31));
  std::vector<Generator> generators(mirrors.begin(), mirrors.end());
  auto sample = sample_orbit(generators, x, 4000, {});
  // Reduce to the 8 distinct orbit points first.
  std::vector<Vector> orbit;
  for (const auto& p : sample.points) {
    bool fresh = true;
    for (const auto& r : orbit)
      if ((p - r).norm() < 1e-9) fresh = false;
    if (fresh) orbit.push_back(p);
  }
  REQUIRE(orbit.size() == 8);
  auto result = invariance_check(orbit, mirrors, 1e-9);
  CHECK(result.invariant);

  CHECK_THROWS_AS(invariance_check({}, mirrors, 1e-9), EmptySet);
}

TEST_CASE("extension run: line plus plane covers the sphere") {
  Subspace l = Subspace::coordinate(3, {0, 1});
  Vector dir(3);
  dir << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  Subspace h = Subspace::line(dir);  // misses L^perp, so H + L = R^3
  rng::Stream stream(353);
  Vector x = random_unit(stream, 3);
  ExtensionOptions opts;
  opts.threshold = 0.2;
  auto report = extension_experiment(h, l, x, 100000, opts);
  CHECK(report.verdict == DensityReport::Verdict::Dense);
  CHECK(report.target.radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extension run: degenerate target short-circuits to dense") {
  Subspace l = Subspace::coordinate(3, {0, 1});
  Subspace h = Subspace::coordinate(3, {0});  // H inside L keeps H+L = L
  Vector x = vec3(0, 0, 1);                   // orthogonal to H + L
  auto report = extension_experiment(h, l, x, 1000, {});
  CHECK(report.verdict == DensityReport::Verdict::Dense);
  CHECK(report.target.degenerate());
}

TEST_CASE("extension run rejects violated hypotheses by name") {
  Subspace l = Subspace::coordinate(3, {0, 1});
  Subspace h = Subspace::coordinate(3, {2});  // equals L^perp
  Vector x = vec3(1, 0, 0);
  CHECK_THROWS_WITH_AS(extension_experiment(h, l, x, 10, {}),
                       "extension_experiment: H ∩ L^perp ≠ {o}", HypothesisViolated);

  Subspace too_big = Subspace::coordinate(3, {0, 2});
  CHECK_THROWS_AS(extension_experiment(too_big, l, x, 10, {}), HypothesisViolated);
}
