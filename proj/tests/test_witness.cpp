#include <doctest.h>

#include <cmath>

#include "symclose/conditions.hpp"
#include "symclose/errors.hpp"
#include "symclose/isometry.hpp"
#include "symclose/witness.hpp"
#include "test_support.hpp"

using namespace symclose;

TEST_CASE("lines witness: two lines at the certified angle") {
  auto witness = lines_witness(2);
  REQUIRE(witness.subspaces.size() == 2);
  double c = std::abs(
      witness.subspaces[0].basis().col(0).dot(witness.subspaces[1].basis().col(0)));
  CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(evaluate(witness.subspaces, Mode::Lines).overall == Verdict::Pass);
}

TEST_CASE("lines witness: chained family spans with a connected path") {
  auto witness = lines_witness(3);
  REQUIRE(witness.subspaces.size() == 3);
  CHECK(spanning_check(witness.subspaces).rank == 3);
  CHECK(orthogonality_graph(witness.subspaces).connected);
}

TEST_CASE("lines witness: no two lines coincide") {
  for (int n = 2; n <= 8; ++n) {
    auto witness = lines_witness(n);
    for (size_t p = 0; p < witness.subspaces.size(); ++p) {
      for (size_t q = p + 1; q < witness.subspaces.size(); ++q) {
        double c = std::abs(
            witness.subspaces[p].basis().col(0).dot(witness.subspaces[q].basis().col(0)));
        CHECK(c < 1.0 - 1e-6);  // positive principal angle
      }
    }
  }
}

TEST_CASE("hyperplanes witness complements the lines witness") {
  auto lines = lines_witness(4);
  auto planes = hyperplanes_witness(4);
  REQUIRE(planes.subspaces.size() == lines.subspaces.size());
  for (size_t j = 0; j < planes.subspaces.size(); ++j) {
    CHECK(planes.subspaces[j].dim() == 3);
    CHECK(planes.subspaces[j].same_span(perp(lines.subspaces[j])));
  }
  CHECK(evaluate(planes.subspaces, Mode::Hyperplanes).overall == Verdict::Pass);
}

TEST_CASE("reflection witness (4,2) is the canonical three-subspace pattern") {
  auto witness = reflection_witness(4, 2);
  REQUIRE(witness.subspaces.size() == 3);  // ceil(4/2)+1

  CHECK(witness.subspaces[0].same_span(Subspace::coordinate(4, {0, 2})));

  double c1 = 1.0 / 3.0, s1 = std::sqrt(1 - c1 * c1);
  double c2 = 1.0 / 5.0, s2 = std::sqrt(1 - c2 * c2);
  Eigen::MatrixXd b2(4, 2);
  b2 << c1, 0, s1, 0, 0, c2, 0, s2;
  CHECK(witness.subspaces[1].same_span(Subspace(4, b2)));

  Eigen::MatrixXd b3(4, 2);
  b3 << c1, 0, 0, s2, 0, c2, s1, 0;
  CHECK(witness.subspaces[2].same_span(Subspace(4, b3)));

  CHECK(spanning_check(witness.subspaces).spans);
  CHECK(witness.angle_specs.size() == 2);
  CHECK(witness.angle_specs[0] == Rational(1, 3));
  CHECK(witness.angle_specs[1] == Rational(1, 5));
}

TEST_CASE("reflection witness (6,2): four subspaces with the extension chain") {
  auto witness = reflection_witness(6, 2);
  REQUIRE(witness.subspaces.size() == 4);  // ceil(6/2)+1
  CHECK(spanning_check(witness.subspaces).rank == 6);

  // Chain hypothesis at the extension step.
  Subspace prefix = sum(sum(witness.subspaces[0], witness.subspaces[1]),
                        witness.subspaces[2]);
  CHECK(intersect(witness.subspaces[3], perp(prefix)).dim() == 0);

  auto report = evaluate(witness.subspaces, Mode::MidReflections);
  CHECK(report.overall == Verdict::Heuristic);
}

TEST_CASE("reflection witness above half dimension is the complemented build") {
  auto high = reflection_witness(6, 4);
  REQUIRE(high.subspaces.size() == 4);  // ceil(6/2)+1 via duality
  auto low = reflection_witness(6, 2);
  REQUIRE(low.subspaces.size() == high.subspaces.size());
  for (size_t j = 0; j < high.subspaces.size(); ++j) {
    CHECK(high.subspaces[j].dim() == 4);
    CHECK(perp(high.subspaces[j]).same_span(low.subspaces[j]));
  }
  CHECK(evaluate(high.subspaces, Mode::MidReflections).overall == Verdict::Heuristic);
}

TEST_CASE("rotation witness examples") {
  auto axes = rotation_witness(3, 1);
  REQUIRE(axes.subspaces.size() == 2);
  CHECK_FALSE(axes.subspaces[0].same_span(axes.subspaces[1]));
  CHECK(evaluate(axes.subspaces, Mode::Rotations).overall == Verdict::Pass);

  auto planes = rotation_witness(4, 2);
  REQUIRE(planes.subspaces.size() == 2);
  std::vector<Subspace> perps;
  for (const auto& h : planes.subspaces) perps.push_back(perp(h));
  CHECK(spanning_check(perps).spans);
  CHECK(orthogonality_graph(perps).connected);

  auto five = rotation_witness(5, 3);
  REQUIRE(five.subspaces.size() == 3);  // ceil(5/2)
  CHECK(evaluate(five.subspaces, Mode::Rotations).overall == Verdict::Pass);
}

TEST_CASE("witness dimension guards") {
  CHECK_THROWS_AS(lines_witness(1), BadDimension);
  CHECK_THROWS_AS(reflection_witness(4, 1), BadDimension);
  CHECK_THROWS_AS(reflection_witness(4, 3), BadDimension);
  CHECK_THROWS_AS(rotation_witness(4, 3), BadDimension);
  CHECK_THROWS_AS(rotation_witness(3, 0), BadDimension);
}

TEST_CASE("witness counts match the corollary tables") {
  for (int n = 2; n <= 10; ++n) {
    for (int i = 1; i <= n - 1; ++i) {
      auto witness = witness_for(n, i, WitnessMode::Reflection);
      CHECK(static_cast<int>(witness.subspaces.size()) ==
            reflection_witness_count(n, i));
      for (const auto& h : witness.subspaces) CHECK(h.dim() == i);
    }
    for (int i = 1; i <= n - 2; ++i) {
      auto witness = witness_for(n, i, WitnessMode::Rotation);
      CHECK(static_cast<int>(witness.subspaces.size()) == rotation_witness_count(n, i));
      for (const auto& h : witness.subspaces) CHECK(h.dim() == i);
    }
  }
}

TEST_CASE("every emitted witness passes its own evaluation") {
  // Full sweep runs in the acceptance suite; spot-check the small range here.
  for (int n = 2; n <= 6; ++n) {
    for (int i = 1; i <= n - 1; ++i) {
      auto witness = witness_for(n, i, WitnessMode::Reflection);
      auto report = evaluate(witness.subspaces, witness.check_mode());
      if (witness.check_mode() == Mode::MidReflections) {
        CHECK(report.overall == Verdict::Heuristic);
      } else {
        CHECK(report.overall == Verdict::Pass);
      }
    }
    for (int i = 1; i <= n - 2; ++i) {
      auto witness = witness_for(n, i, WitnessMode::Rotation);
      CHECK(evaluate(witness.subspaces, Mode::Rotations).overall == Verdict::Pass);
    }
  }
}

TEST_CASE("duocylinder counterexample splits orthogonally and fails evaluation") {
  auto config = counterexample(4, {2}, {2});
  REQUIRE(config.parts.size() == 2);
  REQUIRE(config.parts[0].size() == 1);
  REQUIRE(config.parts[1].size() == 1);
  CHECK(config.parts[0][0].same_span(Subspace::coordinate(4, {0, 1})));
  CHECK(config.parts[1][0].same_span(Subspace::coordinate(4, {2, 3})));

  // Cross inner products between the parts' complements vanish.
  double coupling = (perp(config.parts[0][0]).basis().transpose() *
                     perp(config.parts[1][0]).basis())
                        .cwiseAbs()
                        .maxCoeff();
  CHECK(coupling < 1e-12);

  auto report = evaluate(config.family(), Mode::Rotations);
  CHECK(report.overall == Verdict::Fail);
  REQUIRE(config.part_spans.size() == 2);
  CHECK(config.part_spans[0].same_span(Subspace::coordinate(4, {2, 3})));
  CHECK(config.part_spans[1].same_span(Subspace::coordinate(4, {0, 1})));
}

TEST_CASE("single-part counterexample fails through spanning") {
  auto config = counterexample(3, {1}, {});
  REQUIRE(config.parts[1].empty());
  auto report = evaluate(config.family(), Mode::Rotations);
  CHECK(report.overall == Verdict::Fail);
  bool spanning_failed = false;
  for (const auto& h : report.hypotheses)
    if (h.name == "perp-spanning" && h.verdict == Verdict::Fail) spanning_failed = true;
  CHECK(spanning_failed);
}

TEST_CASE("every counterexample family fails its evaluation") {
  auto cases = {counterexample(4, {2}, {2}), counterexample(5, {2, 3}, {3}),
                counterexample(6, {3}, {4, 4}), counterexample(4, {1}, {})};
  for (const auto& config : cases) {
    auto report = evaluate(config.family(), Mode::Rotations);
    CHECK(report.overall == Verdict::Fail);
  }
}

TEST_CASE("counterexample partition guards") {
  CHECK_THROWS_AS(counterexample(4, {}, {2}), BadPartition);
  CHECK_THROWS_AS(counterexample(4, {2}, {1}), BadPartition);  // 3-dim perp overflows
  CHECK_THROWS_AS(counterexample(4, {3}, {}), BadPartition);   // dim > n-2
}

TEST_CASE("tetrahedron fixture geometry") {
  auto fixture = tetrahedron_fixture();
  REQUIRE(fixture.vertices.size() == 4);
  REQUIRE(fixture.midlines.size() == 3);
  for (const auto& v : fixture.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  // Midlines pass through midpoints of opposite edges: the midpoint of the
  // first two vertices lies on the first axis.
  Vector mid = 0.5 * (fixture.vertices[0] + fixture.vertices[1]);
  CHECK(fixture.midlines[0].residual(mid) < 1e-12);
}
