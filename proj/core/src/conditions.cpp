#include "symclose/conditions.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "relation.hpp"
#include "symclose/errors.hpp"

namespace symclose {

namespace {

// Restores the caller's mpfr working precision on scope exit.
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits)
      : saved(detail::mpreal::default_precision()) {
    detail::mpreal::default_precision(digits);
  }
  ~PrecisionGuard() { detail::mpreal::default_precision(saved); }
};

}  // namespace

Rational::Rational(long long p, long long q) : num(p), den(q) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(std::llabs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> Rational::parse(const std::string& text) {
  try {
    size_t slash = text.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
      long long p = std::stoll(text, &used);
      if (used != text.size()) return std::nullopt;
      return Rational(p, 1);
    }
    long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) return std::nullopt;
    std::string den_part = text.substr(slash + 1);
    long long q = std::stoll(den_part, &used);
    if (used != den_part.size()) return std::nullopt;
    return Rational(p, q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<Rational> recognize_rational(double c, long long max_den, double tol) {
  if (!std::isfinite(c)) return std::nullopt;
  bool negative = c < 0;
  double x = std::abs(c);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 1e15) break;
    long long a = static_cast<long long>(fl);
    if (q1 != 0 && a > (max_den - q0) / q1) break;  // convergent would overflow the cap
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol)
      return Rational(negative ? -p1 : p1, q1);
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

AngleCertificate certify_irrational_angle(const Rational& cosine) {
  if (std::llabs(cosine.num) > cosine.den)
    throw OutOfRange("certify_irrational_angle: |cosine| exceeds 1");
  AngleCertificate cert;
  cert.cosine = cosine;
  // The full list of rational cosines at rational multiples of pi.
  if (cosine == Rational(1, 1))
    cert.multiple = Rational(0, 1);
  else if (cosine == Rational(1, 2))
    cert.multiple = Rational(1, 3);
  else if (cosine == Rational(0, 1))
    cert.multiple = Rational(1, 2);
  else if (cosine == Rational(-1, 2))
    cert.multiple = Rational(2, 3);
  else if (cosine == Rational(-1, 1))
    cert.multiple = Rational(1, 1);
  cert.status = cert.multiple
                    ? AngleCertificate::Status::CertifiedRationalMultipleOfPi
                    : AngleCertificate::Status::CertifiedIrrationalMultipleOfPi;
  return cert;
}

AngleSpec AngleSpec::exact_cosine(Rational r) {
  AngleSpec s;
  s.kind = Kind::ExactCosine;
  s.exact = r;
  return s;
}

AngleSpec AngleSpec::pi_multiple(Rational r) {
  AngleSpec s;
  s.kind = Kind::ExactPiMultiple;
  s.exact = r;
  return s;
}

AngleSpec AngleSpec::approx(double angle) {
  AngleSpec s;
  s.kind = Kind::Decimal;
  s.decimal = angle;
  return s;
}

double AngleSpec::angle_value() const {
  switch (kind) {
    case Kind::ExactCosine:
      return std::acos(exact.value());
    case Kind::ExactPiMultiple:
      return exact.value() * M_PI;
    case Kind::Decimal:
      return decimal;
  }
  return decimal;
}

AngleSpec lift_angle(double angle) {
  if (auto r = recognize_rational(angle / M_PI, 64, 4e-15))
    return AngleSpec::pi_multiple(*r);
  if (auto r = recognize_rational(std::cos(angle), 64, 1e-14))
    return AngleSpec::exact_cosine(*r);
  return AngleSpec::approx(angle);
}

IndependenceVerdict heuristic_independence(const std::vector<AngleSpec>& angles,
                                           long long bound, int precision_digits,
                                           long long deadline_ms) {
  if (angles.empty()) throw Error("heuristic_independence: empty angle list");
  if (bound < 1) throw Error("heuristic_independence: bound must be >= 1");
  if (precision_digits < 16)
    throw PrecisionTooLow("heuristic_independence: need at least 16 digits");
  for (const auto& a : angles) {
    double v = a.angle_value();
    if (!(v > 0.0 && v < M_PI / 2.0))
      throw Error("heuristic_independence: angles must lie in (0, pi/2)");
  }

  PrecisionGuard guard(static_cast<unsigned>(precision_digits));
  std::vector<detail::mpreal> values;
  detail::mpreal pi = acos(detail::mpreal(-1));
  values.push_back(pi);
  for (const auto& a : angles) {
    switch (a.kind) {
      case AngleSpec::Kind::ExactCosine:
        values.push_back(acos(detail::mpreal(a.exact.num) / a.exact.den));
        break;
      case AngleSpec::Kind::ExactPiMultiple:
        values.push_back(pi * a.exact.num / a.exact.den);
        break;
      case AngleSpec::Kind::Decimal:
        values.push_back(detail::mpreal(a.decimal));
        break;
    }
  }

  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (deadline_ms > 0)
    deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(deadline_ms);
  detail::mpreal residual_eps =
      pow(detail::mpreal(10), -(precision_digits / 2));
  detail::PslqOutcome res = detail::pslq(values, bound, residual_eps, deadline);

  IndependenceVerdict verdict;
  verdict.searched_bound = bound;
  verdict.precision_digits = precision_digits;
  verdict.timed_out = res.timed_out;
  verdict.note = res.note;
  for (const auto& v : values) verdict.values.push_back(v.convert_to<double>());
  switch (res.kind) {
    case detail::PslqOutcome::Kind::RelationFound:
      verdict.outcome = IndependenceVerdict::Outcome::RelationFound;
      verdict.relation = res.relation;
      break;
    case detail::PslqOutcome::Kind::NoRelationAtBound:
      verdict.outcome = IndependenceVerdict::Outcome::NoRelationAtBound;
      break;
    case detail::PslqOutcome::Kind::Inconclusive:
      verdict.outcome = IndependenceVerdict::Outcome::Inconclusive;
      break;
  }
  return verdict;
}

IndependenceVerdict heuristic_independence(const std::vector<double>& angles,
                                           long long bound, int precision_digits,
                                           long long deadline_ms) {
  std::vector<AngleSpec> specs;
  specs.reserve(angles.size());
  for (double a : angles) specs.push_back(lift_angle(a));
  return heuristic_independence(specs, bound, precision_digits, deadline_ms);
}

OrthogonalityGraph orthogonality_graph(const std::vector<Subspace>& subspaces) {
  if (subspaces.empty()) throw Error("orthogonality_graph: empty family");
  const int n = subspaces.front().ambient_dim();
  for (const auto& h : subspaces)
    if (h.ambient_dim() != n)
      throw DimensionMismatch("orthogonality_graph: mixed ambient dimensions");

  const int k = static_cast<int>(subspaces.size());
  OrthogonalityGraph graph;
  graph.node_count = k;

  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  };

  for (int p = 0; p < k; ++p) {
    for (int q = p + 1; q < k; ++q) {
      double coupling = 0.0;
      if (subspaces[static_cast<size_t>(p)].dim() > 0 &&
          subspaces[static_cast<size_t>(q)].dim() > 0)
        coupling = (subspaces[static_cast<size_t>(p)].basis().transpose() *
                    subspaces[static_cast<size_t>(q)].basis())
                       .cwiseAbs()
                       .maxCoeff();
      if (coupling > tol::kOrthEdge) {
        graph.edges.emplace_back(p, q);
        parent[static_cast<size_t>(find(p))] = find(q);
      }
    }
  }

  std::vector<std::vector<int>> buckets(static_cast<size_t>(k));
  for (int v = 0; v < k; ++v) buckets[static_cast<size_t>(find(v))].push_back(v);
  for (auto& b : buckets)
    if (!b.empty()) graph.components.push_back(std::move(b));
  graph.connected = graph.components.size() == 1;
  return graph;
}

SpanCheck spanning_check(const std::vector<Subspace>& subspaces) {
  if (subspaces.empty()) throw Error("spanning_check: empty family");
  const int n = subspaces.front().ambient_dim();
  int total = 0;
  for (const auto& h : subspaces) {
    if (h.ambient_dim() != n)
      throw DimensionMismatch("spanning_check: mixed ambient dimensions");
    total += h.dim();
  }
  Eigen::MatrixXd stacked(n, total);
  int at = 0;
  for (const auto& h : subspaces) {
    stacked.middleCols(at, h.dim()) = h.basis();
    at += h.dim();
  }
  SpanCheck check;
  if (total == 0) {
    check.rank = 0;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? sv(0) * tol::kRankRel : 0.0;
    for (int j = 0; j < sv.size(); ++j)
      if (sv(j) > cutoff && sv(j) > 0.0) ++check.rank;
  }
  check.spans = check.rank == n;
  return check;
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Lines:
      return "lines";
    case Mode::Hyperplanes:
      return "hyperplanes";
    case Mode::MidReflections:
      return "reflection";
    case Mode::Rotations:
      return "rotation";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Heuristic:
      return "heuristic";
  }
  return "?";
}

namespace {

Verdict combine(const std::vector<HypothesisReport>& hypotheses) {
  bool heuristic = false;
  for (const auto& h : hypotheses) {
    if (h.verdict == Verdict::Fail) return Verdict::Fail;
    if (h.verdict == Verdict::Heuristic) heuristic = true;
  }
  return heuristic ? Verdict::Heuristic : Verdict::Pass;
}

Bipartition split_by_components(const OrthogonalityGraph& graph) {
  Bipartition parts;
  parts.first = graph.components.front();
  for (size_t c = 1; c < graph.components.size(); ++c)
    parts.second.insert(parts.second.end(), graph.components[c].begin(),
                        graph.components[c].end());
  return parts;
}

// Hypothesis (i) for unit directions: hunt for one pair at a certified
// irrational multiple of pi; fall back to the relation search pair by pair.
HypothesisReport irrational_pair_hypothesis(const std::vector<Subspace>& lines,
                                            const EvaluateOptions& opts,
                                            std::vector<std::string>& notes) {
  HypothesisReport hyp;
  hyp.name = "irrational-angle-pair";
  const int k = static_cast<int>(lines.size());
  if (k < 2) {
    hyp.verdict = Verdict::Fail;
    hyp.detail = "need at least two subspaces to form an angle";
    return hyp;
  }

  struct OpenPair {
    int p, q;
    double angle;
  };
  std::vector<OpenPair> open;
  int rational_pairs = 0;

  for (int p = 0; p < k; ++p) {
    for (int q = p + 1; q < k; ++q) {
      double c = std::abs(lines[static_cast<size_t>(p)].basis().col(0).dot(
          lines[static_cast<size_t>(q)].basis().col(0)));
      c = std::min(c, 1.0);
      if (auto r = recognize_rational(c)) {
        AngleCertificate cert = certify_irrational_angle(*r);
        if (cert.status == AngleCertificate::Status::CertifiedIrrationalMultipleOfPi) {
          hyp.verdict = Verdict::Pass;
          hyp.detail = "pair (" + std::to_string(p) + "," + std::to_string(q) +
                       ") at angle arccos(" + r->str() +
                       "), a certified irrational multiple of pi";
          return hyp;
        }
        ++rational_pairs;
        continue;
      }
      open.push_back({p, q, std::acos(c)});
    }
  }

  bool any_inconclusive = false;
  for (const auto& pr : open) {
    IndependenceVerdict iv = heuristic_independence(
        std::vector<AngleSpec>{lift_angle(pr.angle)}, opts.relation_bound,
        opts.precision_digits, opts.deadline_ms);
    if (iv.outcome == IndependenceVerdict::Outcome::NoRelationAtBound) {
      hyp.verdict = Verdict::Heuristic;
      hyp.detail = "pair (" + std::to_string(pr.p) + "," + std::to_string(pr.q) +
                   "): no integer relation between pi and the angle at bound " +
                   std::to_string(opts.relation_bound) + " (supported, not proved)";
      notes.push_back(
          "no pair has a certified irrational angle; the closure subcommand "
          "gives independent evidence, though whether a non-finite reflection "
          "group alone suffices in this mode is open");
      return hyp;
    }
    if (iv.outcome == IndependenceVerdict::Outcome::RelationFound) {
      ++rational_pairs;
      continue;
    }
    any_inconclusive = true;
  }

  if (any_inconclusive) {
    hyp.verdict = Verdict::Heuristic;
    hyp.detail = "independence search inconclusive (deadline or precision)";
    return hyp;
  }
  hyp.verdict = Verdict::Fail;
  hyp.detail = "all " + std::to_string(rational_pairs) +
               " pairwise angles are rational multiples of pi";
  return hyp;
}

HypothesisReport spanning_hypothesis(const std::vector<Subspace>& family,
                                     const std::string& name) {
  HypothesisReport hyp;
  hyp.name = name;
  SpanCheck check = spanning_check(family);
  const int n = family.front().ambient_dim();
  hyp.verdict = check.spans ? Verdict::Pass : Verdict::Fail;
  hyp.detail = "rank " + std::to_string(check.rank) + " of " + std::to_string(n);
  return hyp;
}

HypothesisReport connectivity_hypothesis(const std::vector<Subspace>& family) {
  HypothesisReport hyp;
  hyp.name = "no-orthogonal-bipartition";
  OrthogonalityGraph graph = orthogonality_graph(family);
  if (graph.connected) {
    hyp.verdict = Verdict::Pass;
    hyp.detail = "orthogonality graph connected (" +
                 std::to_string(graph.edges.size()) + " edges)";
  } else {
    hyp.verdict = Verdict::Fail;
    hyp.bipartition = split_by_components(graph);
    hyp.detail = "family splits into " + std::to_string(graph.components.size()) +
                 " mutually orthogonal groups";
  }
  return hyp;
}

void lines_hypotheses(const std::vector<Subspace>& lines, const EvaluateOptions& opts,
                      ConditionReport& report) {
  report.hypotheses.push_back(irrational_pair_hypothesis(lines, opts, report.notes));
  report.hypotheses.push_back(spanning_hypothesis(lines, "spanning"));
  report.hypotheses.push_back(connectivity_hypothesis(lines));
}

void mid_reflection_hypotheses(std::vector<Subspace> work, const EvaluateOptions& opts,
                               ConditionReport& report) {
  const int n = work.front().ambient_dim();
  int i = work.front().dim();
  if (2 * i > n) {
    for (auto& h : work) h = perp(h);
    i = n - i;
    report.notes.push_back(
        "subspace dimension above n/2: hypotheses checked on the orthogonal "
        "complements");
  }
  const int k = static_cast<int>(work.size());

  HypothesisReport pattern;
  pattern.name = "canonical-pattern";
  if (k < 3) {
    pattern.verdict = Verdict::Heuristic;
    pattern.detail =
        "fewer than three subspaces; the sufficient construction does not apply";
  } else {
    PrincipalAngleDecomposition pad12 = principal_angles(work[0], work[1]);
    PrincipalAngleDecomposition pad13 = principal_angles(work[0], work[2]);
    const auto& a12 = pad12.angles();
    const auto& a13 = pad13.angles();

    bool structural = true;
    std::string why;
    for (int j = 0; j < i && structural; ++j) {
      if (a12[j] < 1e-9 || a12[j] > M_PI / 2 - 1e-9) {
        structural = false;
        why = "angles must lie strictly inside (0, pi/2)";
      }
      if (j > 0 && a12[j] <= a12[j - 1] + 1e-9) {
        structural = false;
        why = "angle sequence must be strictly increasing";
      }
    }
    if (structural)
      for (int j = 0; j < i; ++j)
        if (std::abs(a12[j] - a13[j]) > 1e-8) {
          structural = false;
          why = "angle multisets of (H1,H2) and (H1,H3) differ";
          break;
        }
    if (structural &&
        (sum(work[0], work[1]).dim() != 2 * i || sum(work[0], work[2]).dim() != 2 * i ||
         sum(sum(work[0], work[1]), work[2]).dim() != 2 * i)) {
      structural = false;
      why = "H1, H2, H3 must pairwise meet trivially inside a common 2i-dim space";
    }

    if (!structural) {
      pattern.verdict = Verdict::Heuristic;
      pattern.detail = "family does not match the canonical three-subspace "
                       "construction (" + why + "); the sufficient conditions are "
                       "inapplicable, which is not a refutation";
    } else {
      std::vector<AngleSpec> specs;
      for (int j = 0; j < i; ++j) specs.push_back(lift_angle(a12[j]));
      IndependenceVerdict iv = heuristic_independence(
          specs, opts.relation_bound, opts.precision_digits, opts.deadline_ms);
      if (iv.outcome == IndependenceVerdict::Outcome::RelationFound) {
        pattern.verdict = Verdict::Fail;
        pattern.relation = iv.relation;
        pattern.detail = "pattern matched but an integer relation ties pi and the "
                         "angles; the independence hypothesis fails";
      } else if (iv.outcome == IndependenceVerdict::Outcome::NoRelationAtBound) {
        pattern.verdict = Verdict::Heuristic;
        pattern.detail = "pattern matched; independence of pi and the angles "
                         "supported at bound " + std::to_string(opts.relation_bound) +
                         " (heuristic, never a proof)";
      } else {
        pattern.verdict = Verdict::Heuristic;
        pattern.detail = "pattern matched; independence search inconclusive";
      }
    }
  }
  report.hypotheses.push_back(std::move(pattern));

  report.hypotheses.push_back(spanning_hypothesis(work, "spanning"));

  HypothesisReport chain;
  chain.name = "trivial-intersection-chain";
  chain.verdict = Verdict::Pass;
  chain.detail = "holds at every extension step";
  if (k > 3) {
    Subspace prefix = sum(sum(work[0], work[1]), work[2]);
    for (int e = 3; e < k; ++e) {
      if (intersect(work[static_cast<size_t>(e)], perp(prefix)).dim() != 0) {
        chain.verdict = Verdict::Fail;
        chain.detail =
            "subspace " + std::to_string(e) + " meets the orthogonal complement "
            "of the preceding sum nontrivially";
        break;
      }
      prefix = sum(prefix, work[static_cast<size_t>(e)]);
    }
  }
  report.hypotheses.push_back(std::move(chain));
}

}  // namespace

void validate_mode(const std::vector<Subspace>& subspaces, Mode mode) {
  if (subspaces.empty()) throw ModeMismatch("evaluate: empty family");
  const int n = subspaces.front().ambient_dim();
  for (const auto& h : subspaces)
    if (h.ambient_dim() != n)
      throw DimensionMismatch("evaluate: mixed ambient dimensions");

  switch (mode) {
    case Mode::Lines:
      for (const auto& h : subspaces)
        if (h.dim() != 1)
          throw ModeMismatch("lines mode requires one-dimensional subspaces");
      break;
    case Mode::Hyperplanes:
      for (const auto& h : subspaces)
        if (h.dim() != n - 1)
          throw ModeMismatch("hyperplanes mode requires (n-1)-dimensional subspaces");
      break;
    case Mode::MidReflections: {
      const int i = subspaces.front().dim();
      for (const auto& h : subspaces)
        if (h.dim() != i)
          throw ModeMismatch("reflection mode requires a common subspace dimension");
      if (i < 2 || i > n - 2)
        throw ModeMismatch("reflection mode requires 2 <= dim <= n-2");
      break;
    }
    case Mode::Rotations:
      for (const auto& h : subspaces)
        if (h.dim() < 1 || h.dim() > n - 2)
          throw ModeMismatch("rotation mode requires 1 <= dim <= n-2");
      break;
  }
}

ConditionReport evaluate(const std::vector<Subspace>& subspaces, Mode mode,
                         const EvaluateOptions& opts) {
  validate_mode(subspaces, mode);

  ConditionReport report;
  report.mode = mode;

  switch (mode) {
    case Mode::Lines: {
      lines_hypotheses(subspaces, opts, report);
      break;
    }
    case Mode::Hyperplanes: {
      std::vector<Subspace> normals;
      for (const auto& h : subspaces) normals.push_back(perp(h));
      lines_hypotheses(normals, opts, report);
      break;
    }
    case Mode::MidReflections: {
      mid_reflection_hypotheses(subspaces, opts, report);
      break;
    }
    case Mode::Rotations: {
      std::vector<Subspace> perps;
      for (const auto& h : subspaces) perps.push_back(perp(h));
      report.hypotheses.push_back(spanning_hypothesis(perps, "perp-spanning"));
      report.hypotheses.push_back(connectivity_hypothesis(perps));
      break;
    }
  }

  report.overall = combine(report.hypotheses);
  return report;
}

}  // namespace symclose
