#pragma once

#include <string>
#include <vector>

#include "symclose/conditions.hpp"
#include "symclose/subspace.hpp"

namespace symclose {

enum class WitnessMode { Reflection, Rotation };

/// A named subspace family together with the certificate of which result it
/// instantiates and the exact rational cosines used in its construction.
struct WitnessConfig {
  int ambient_dim = 0;
  WitnessMode mode = WitnessMode::Reflection;
  std::vector<Subspace> subspaces;
  std::string theorem_tag;
  std::vector<Rational> angle_specs;

  /// Evaluation mode implied by the family's dimensions.
  Mode check_mode() const;
};

/// A family split into two mutually orthogonal parts, with the conserved
/// quantities that block full rotational symmetry. part_spans holds the span
/// of each part's orthogonal complements (S_1, S_2).
struct CounterexampleConfig {
  int ambient_dim = 0;
  std::vector<std::vector<Subspace>> parts;   // size 2; second may be empty
  std::vector<Subspace> part_spans;           // S_1, S_2
  std::vector<std::string> invariant_description;

  std::vector<Subspace> family() const;
};

/// n lines through the origin of R^n whose reflections generate full
/// symmetry: the first two meet at arccos(1/3), a certified irrational
/// multiple of pi, and each later line tilts a fresh coordinate axis toward
/// the previous one so the family spans and its orthogonality graph is a
/// path.
WitnessConfig lines_witness(int n);

/// The complements of lines_witness(n): n hyperplanes whose unit normals
/// satisfy the same three conditions.
WitnessConfig hyperplanes_witness(int n);

/// k = ceil(n/i)+1 subspaces of dimension i (2 <= i <= n-2) realizing the
/// canonical three-subspace pattern with angles arccos(1/(2j+1)) followed by
/// trivially-intersecting extensions; for i > n/2 the construction is built
/// in dimension n-i and every subspace replaced by its complement.
WitnessConfig reflection_witness(int n, int i);

/// k = ceil(n/(n-i)) subspaces of dimension i (1 <= i <= n-2) whose
/// complements span R^n and form a connected orthogonality graph.
WitnessConfig rotation_witness(int n, int i);

/// Dispatch: Reflection families route i = 1 to lines_witness and i = n-1 to
/// hyperplanes_witness; Rotation families go to rotation_witness.
WitnessConfig witness_for(int n, int i, WitnessMode mode);

/// Two orthogonal coordinate blocks; each part's subspaces contain the other
/// part's block, so their complements stay inside their own block and the
/// family splits orthogonally. An empty second part produces the
/// spanning-failure variant instead.
CounterexampleConfig counterexample(int n, const std::vector<int>& part1_dims,
                                    const std::vector<int>& part2_dims);

/// Expected family sizes.
int reflection_witness_count(int n, int i);
int rotation_witness_count(int n, int i);

/// The regular-tetrahedron configuration: 4 vertices on S^2 and the 3 lines
/// through midpoints of opposite edge pairs (the coordinate axes for the
/// standard embedding). The vertex set is invariant under reflections in the
/// lines but not under reflections in their orthogonal planes.
struct TetrahedronFixture {
  std::vector<Vector> vertices;
  std::vector<Subspace> midlines;
};

TetrahedronFixture tetrahedron_fixture();

}  // namespace symclose
