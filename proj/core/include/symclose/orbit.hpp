#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symclose/isometry.hpp"
#include "symclose/subspace.hpp"

namespace symclose {

/// Orbit generator: a fixed map, or a stabilizer spec that draws a fresh
/// seed-deterministic Haar sample from SO(n)_H every time its letter comes up.
struct StabilizerSpec {
  Subspace fixed;
};

using Generator = std::variant<OrthogonalMap, StabilizerSpec>;

struct WordPolicy {
  enum class Kind {
    /// Per point: word length uniform in [0, length], letters uniform.
    RandomWords,
    /// Point m is the generator cycle applied m times (pure powers of the
    /// cyclic composite, e.g. (R2 R1)^m for two generators).
    AlternatingPowers,
  };

  Kind kind = Kind::RandomWords;
  // Words up to length L wind each principal 2-plane by at most L/2 steps,
  // so short maxima leave visible holes; 128 keeps desk-scale targets
  // covered with margin.
  int length = 128;
  std::uint64_t seed = 0;

  std::string descriptor() const;
};

struct OrbitSample {
  Vector seed_point;
  std::vector<Vector> points;
  std::string word_policy;
  long budget_used = 0;
};

/// Applies up to `budget` random group elements to the unit vector x.
/// Deterministic in (generators, x, budget, policy) regardless of worker
/// count: every point derives from its own index-keyed stream.
OrbitSample sample_orbit(const std::vector<Generator>& generators, const Vector& x,
                         long budget, const WordPolicy& policy = {});

/// Max over seed-deterministic uniform probes on the target of the min
/// chordal distance to the sample. Monotone non-increasing in sample growth
/// for fixed probes. For a degenerate (single point) target this is the
/// distance from that point to the sample.
double covering_radius(const OrbitSample& sample, const SubSphere& target,
                       int probe_count, std::uint64_t probe_seed);

struct ConservedQuantity {
  std::string label;
  double reference = 0.0;      // value at the seed point
  double max_deviation = 0.0;  // max - min across the sample
};

struct ConservedQuantityReport {
  std::vector<ConservedQuantity> quantities;
};

struct DensityOptions {
  int probe_count = 2000;
  std::uint64_t probe_seed = 2026;
  /// Confinement requires at least this many sample points as evidence;
  /// smaller samples yield Inconclusive rather than Confined.
  long min_confinement_samples = 1000;
};

struct DensityReport {
  enum class Verdict { Dense, Confined, Inconclusive };

  explicit DensityReport(SubSphere t) : target(std::move(t)) {}

  SubSphere target;
  double covering_radius_estimate = 0.0;
  int probes_used = 0;
  double threshold = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  ConservedQuantityReport conserved;
  /// Index into the candidate list of the quantity that blocked density.
  std::optional<int> confining_candidate;
  std::string note;
};

std::string to_string(DensityReport::Verdict verdict);

/// Dense if the covering radius beats the threshold; otherwise Confined when
/// some candidate subspace has projection norm conserved across the sample
/// (with enough evidence); otherwise Inconclusive. Absence of evidence is
/// never converted into Dense or Confined.
DensityReport density_verdict(const OrbitSample& sample, const SubSphere& target,
                              double threshold,
                              const std::vector<Subspace>& conserved_candidates,
                              const DensityOptions& opts = {});

struct InvarianceResult {
  bool invariant = false;
  double max_error = 0.0;
};

/// Set-level invariance: for every map g and point p of E, the distance from
/// g p to the nearest point of E. Not pointwise fixing.
InvarianceResult invariance_check(const std::vector<Vector>& set,
                                  const std::vector<OrthogonalMap>& maps, double tol);

struct ExtensionOptions {
  double threshold = 0.15;
  WordPolicy policy;
  DensityOptions density;
};

/// Empirical run of the symmetry extension setup: requires H ∩ L^perp = {o}
/// and dim H < dim L, samples the group generated by the stabilizer of
/// L^perp together with the reflection in H, and reports density on
/// S^{n-1} ∩ (H + L + x). Short-circuits to Dense when the target is the
/// single point {x}.
DensityReport extension_experiment(const Subspace& h, const Subspace& l,
                                   const Vector& x, long budget,
                                   const ExtensionOptions& opts = {});

/// Worker cap: SYMCLOSE_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
int worker_count();

}  // namespace symclose
