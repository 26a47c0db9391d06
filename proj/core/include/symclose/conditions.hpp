#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symclose/subspace.hpp"

namespace symclose {

/// Exact reduced rational p/q with q > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long p, long long q);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;

  /// Parses "p/q" or "p". Returns nullopt on malformed input.
  static std::optional<Rational> parse(const std::string& text);
};

/// Recognizes c as p/q with q <= max_den and |c - p/q| < tol, via continued
/// fractions. Used to lift numerically entered cosines to exact certificates.
std::optional<Rational> recognize_rational(double c, long long max_den = 1000,
                                           double tol = 1e-12);

struct AngleCertificate {
  enum class Status {
    CertifiedIrrationalMultipleOfPi,
    CertifiedRationalMultipleOfPi,
    Unknown,
  };

  Status status = Status::Unknown;
  Rational cosine;
  /// theta / pi when the angle is a certified rational multiple of pi.
  std::optional<Rational> multiple;
};

/// Exact certificate for theta = arccos(p/q): a rational cosine belongs to a
/// rational multiple of pi only for cos in {0, +-1/2, +-1}, so anything else
/// is certified irrational. Requires |p/q| <= 1.
AngleCertificate certify_irrational_angle(const Rational& cosine);

/// An angle fed to the relation search. Exact forms are recomputed at the
/// working precision; decimals are taken at face value.
struct AngleSpec {
  enum class Kind { ExactCosine, ExactPiMultiple, Decimal };

  Kind kind = Kind::Decimal;
  Rational exact;        // cosine or pi-multiple, per kind
  double decimal = 0.0;  // used when kind == Decimal

  static AngleSpec exact_cosine(Rational r);
  static AngleSpec pi_multiple(Rational r);
  static AngleSpec approx(double angle);

  /// The angle as a double (for reports).
  double angle_value() const;
};

/// Lifts plain decimal angles to exact specs when they sit within 1e-14 of a
/// small rational multiple of pi or of arccos of a small rational.
AngleSpec lift_angle(double angle);

struct IndependenceVerdict {
  enum class Outcome { NoRelationAtBound, RelationFound, Inconclusive };

  Outcome outcome = Outcome::Inconclusive;
  /// (pi, alpha_1, ..., alpha_i) as doubles, for reporting.
  std::vector<double> values;
  /// Integer coefficients (q_0 for pi, then one per angle) when a relation
  /// was found: |q_0 pi + sum q_j alpha_j| < 10^(-precision_digits/2).
  std::optional<std::vector<long long>> relation;
  long long searched_bound = 0;
  int precision_digits = 0;
  bool timed_out = false;
  std::string note;
};

/// PSLQ integer-relation search on (pi, angles...) at precision_digits
/// working digits. A found relation refutes Q-linear independence; running
/// the coefficient bound out only supports it, never proves it. Cooperative
/// deadline in milliseconds (0 = none) yields Inconclusive on expiry.
IndependenceVerdict heuristic_independence(const std::vector<AngleSpec>& angles,
                                           long long bound = 10000,
                                           int precision_digits = 64,
                                           long long deadline_ms = 0);

/// Overload for raw decimal angles (each lifted via lift_angle).
IndependenceVerdict heuristic_independence(const std::vector<double>& angles,
                                           long long bound = 10000,
                                           int precision_digits = 64,
                                           long long deadline_ms = 0);

/// Nodes are subspaces; an edge joins every non-orthogonal pair. The family
/// admits an orthogonal bipartition exactly when the graph is disconnected.
struct OrthogonalityGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  bool connected = false;
  std::vector<std::vector<int>> components;
};

OrthogonalityGraph orthogonality_graph(const std::vector<Subspace>& subspaces);

struct SpanCheck {
  int rank = 0;
  bool spans = false;
};

/// Rank of the concatenated bases; spans iff rank equals the ambient dim.
SpanCheck spanning_check(const std::vector<Subspace>& subspaces);

enum class Mode { Lines, Hyperplanes, MidReflections, Rotations };

enum class Verdict { Pass, Fail, Heuristic };

std::string to_string(Mode mode);
std::string to_string(Verdict verdict);

using Bipartition = std::pair<std::vector<int>, std::vector<int>>;

struct HypothesisReport {
  std::string name;
  Verdict verdict = Verdict::Heuristic;
  std::string detail;
  std::optional<Bipartition> bipartition;  // witness for partition failures
  std::optional<std::vector<long long>> relation;  // witness for independence failures
};

struct ConditionReport {
  Mode mode = Mode::Lines;
  std::vector<HypothesisReport> hypotheses;
  Verdict overall = Verdict::Heuristic;
  std::vector<std::string> notes;
};

struct EvaluateOptions {
  long long relation_bound = 10000;
  int precision_digits = 64;
  long long deadline_ms = 0;
};

/// Validates the family against the mode's dimension constraints (Lines: all
/// dim 1; Hyperplanes: all dim n-1; MidReflections: a common dim in
/// [2, n-2]; Rotations: each dim in [1, n-2]). Throws ModeMismatch or
/// DimensionMismatch.
void validate_mode(const std::vector<Subspace>& subspaces, Mode mode);

/// Checks the hypothesis set matching `mode`:
///   Lines          - certified/heuristic irrational pair, spanning,
///                    connectivity of the orthogonality graph;
///   Hyperplanes    - the same three conditions on the unit normals;
///   MidReflections - canonical three-subspace pattern (after replacing every
///                    subspace by its complement when dim > n/2), spanning,
///                    and the trivial-intersection chain;
///   Rotations      - spanning of the complements and connectivity of their
///                    orthogonality graph.
/// Overall verdict is Pass iff every hypothesis passes; Fail dominates
/// Heuristic.
ConditionReport evaluate(const std::vector<Subspace>& subspaces, Mode mode,
                         const EvaluateOptions& opts = {});

}  // namespace symclose
