#include "symclose/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "symclose/errors.hpp"
#include "symclose/rng.hpp"

namespace symclose {

int worker_count() {
  if (const char* env = std::getenv("SYMCLOSE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string WordPolicy::descriptor() const {
  if (kind == Kind::AlternatingPowers) return "alternating-powers";
  return "random-words(max-length=" + std::to_string(length) +
         ", seed=" + std::to_string(seed) + ")";
}

namespace {

int generator_dim(const Generator& g) {
  if (const auto* map = std::get_if<OrthogonalMap>(&g)) return map->ambient_dim();
  return std::get<StabilizerSpec>(g).fixed.ambient_dim();
}

// Stabilizer generators keep their projector and complement frame so each
// letter only needs a fresh Haar rotation block.
struct PreparedStabilizer {
  Eigen::MatrixXd projector;
  Eigen::MatrixXd frame;  // n x d basis of H^perp
  int rotation_dim;
};

using PreparedGenerator = std::variant<Eigen::MatrixXd, PreparedStabilizer>;

std::vector<PreparedGenerator> prepare(const std::vector<Generator>& generators) {
  std::vector<PreparedGenerator> prepared;
  prepared.reserve(generators.size());
  for (const auto& g : generators) {
    if (const auto* map = std::get_if<OrthogonalMap>(&g)) {
      prepared.emplace_back(map->matrix());
    } else {
      const Subspace& h = std::get<StabilizerSpec>(g).fixed;
      const int d = h.ambient_dim() - h.dim();
      if (d < 2)
        throw TrivialStabilizer("sample_orbit: stabilizer spec needs dim H <= n - 2");
      prepared.emplace_back(PreparedStabilizer{h.projector(), perp(h).basis(), d});
    }
  }
  return prepared;
}

struct LetterWorkspace {
  Vector image;
  Eigen::VectorXd coords;
  Eigen::VectorXd rotated;
};

// Applies generator `which` to v, drawing stabilizer randomness from the
// caller's stream.
void apply_letter(const std::vector<PreparedGenerator>& generators, size_t which,
                  rng::Stream& stream, Vector& v, LetterWorkspace& ws) {
  const PreparedGenerator& g = generators[which];
  if (const auto* map = std::get_if<Eigen::MatrixXd>(&g)) {
    ws.image.noalias() = *map * v;
    v.swap(ws.image);
    return;
  }
  const auto& stab = std::get<PreparedStabilizer>(g);
  ws.coords.noalias() = stab.frame.transpose() * v;
  if (stab.rotation_dim == 2) {
    double angle = 2.0 * M_PI * rng::Stream(stream.next_u64()).uniform();
    double c = std::cos(angle), s = std::sin(angle);
    double r0 = c * ws.coords[0] - s * ws.coords[1];
    double r1 = s * ws.coords[0] + c * ws.coords[1];
    ws.rotated.resize(2);
    ws.rotated[0] = r0;
    ws.rotated[1] = r1;
  } else {
    Eigen::MatrixXd q = haar_special_orthogonal(stab.rotation_dim, stream.next_u64());
    ws.rotated.noalias() = q * ws.coords;
  }
  ws.image.noalias() = stab.projector * v;
  ws.image.noalias() += stab.frame * ws.rotated;
  v.swap(ws.image);
}

void sample_random_words(const std::vector<PreparedGenerator>& generators,
                         const Vector& x, long budget, const WordPolicy& policy,
                         std::vector<Vector>& points) {
  const size_t g = generators.size();
  auto worker = [&](long begin, long end) {
    LetterWorkspace ws;
    Vector v(x.size());
    for (long idx = begin; idx < end; ++idx) {
      rng::Stream stream(rng::mix(policy.seed, static_cast<std::uint64_t>(idx) + 1));
      int len = static_cast<int>(stream.below(static_cast<std::uint64_t>(policy.length) + 1));
      v = x;
      for (int step = 0; step < len; ++step)
        apply_letter(generators, static_cast<size_t>(stream.below(g)), stream, v, ws);
      points[static_cast<size_t>(idx)] = v;
    }
  };

  int workers = std::min<long>(worker_count(), std::max<long>(1, budget / 1024));
  if (workers <= 1) {
    worker(0, budget);
    return;
  }
  std::vector<std::thread> pool;
  long chunk = (budget + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long begin = w * chunk;
    long end = std::min<long>(budget, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(worker, begin, end);
  }
  for (auto& t : pool) t.join();
}

void sample_alternating_powers(const std::vector<PreparedGenerator>& generators,
                               const Vector& x, long budget,
                               const WordPolicy& policy,
                               std::vector<Vector>& points) {
  rng::Stream stream(rng::mix(policy.seed, 0x616c7450776572ULL));
  LetterWorkspace ws;
  Vector v = x;
  for (long m = 0; m < budget; ++m) {
    points[static_cast<size_t>(m)] = v;
    for (size_t which = 0; which < generators.size(); ++which)
      apply_letter(generators, which, stream, v, ws);
  }
}

}  // namespace

OrbitSample sample_orbit(const std::vector<Generator>& generators, const Vector& x,
                         long budget, const WordPolicy& policy) {
  if (generators.empty()) throw EmptyGenerators("sample_orbit: no generators");
  if (budget < 1) throw Error("sample_orbit: budget must be >= 1");
  const int n = generator_dim(generators.front());
  for (const auto& g : generators)
    if (generator_dim(g) != n)
      throw DimensionMismatch("sample_orbit: generators have mixed dimensions");
  if (static_cast<int>(x.size()) != n)
    throw DimensionMismatch("sample_orbit: point dimension mismatch");
  if (std::abs(x.norm() - 1.0) > tol::kOrtho)
    throw NotUnit("sample_orbit: seed point must be unit norm");

  OrbitSample sample;
  sample.seed_point = x;
  sample.word_policy = policy.descriptor();
  sample.budget_used = budget;
  sample.points.resize(static_cast<size_t>(budget));
  std::vector<PreparedGenerator> prepared = prepare(generators);
  if (policy.kind == WordPolicy::Kind::AlternatingPowers)
    sample_alternating_powers(prepared, x, budget, policy, sample.points);
  else
    sample_random_words(prepared, x, budget, policy, sample.points);
  return sample;
}

namespace {

// Per-probe chordal min distances, GEMM-blocked over the sample.
std::vector<double> probe_min_sq(const std::vector<Vector>& points,
                                 const Eigen::MatrixXd& probes) {
  const int n = static_cast<int>(probes.rows());
  const int p = static_cast<int>(probes.cols());
  const long count = static_cast<long>(points.size());

  Eigen::VectorXd probe_sq(p);
  for (int j = 0; j < p; ++j) probe_sq[j] = probes.col(j).squaredNorm();

  const long block = 8192;
  int workers = std::min<long>(worker_count(), std::max<long>(1, count / block));
  std::vector<std::vector<double>> partial(
      static_cast<size_t>(std::max(workers, 1)),
      std::vector<double>(static_cast<size_t>(p), std::numeric_limits<double>::max()));

  // Partial minima hold min_r (|s_r|^2 - 2 s_r.p_j); |p_j|^2 is added at the
  // end so the column scan stays a single vectorized reduction.
  auto scan = [&](int w, long begin, long end) {
    Eigen::MatrixXd chunk(std::min(block, end - begin), n);
    Eigen::VectorXd s2(chunk.rows());
    Eigen::MatrixXd dots(chunk.rows(), p);
    auto& mins = partial[static_cast<size_t>(w)];
    for (long at = begin; at < end; at += block) {
      long rows = std::min(block, end - at);
      for (long r = 0; r < rows; ++r)
        chunk.row(r) = points[static_cast<size_t>(at + r)].transpose();
      s2.head(rows) = chunk.topRows(rows).rowwise().squaredNorm();
      dots.topRows(rows).noalias() = chunk.topRows(rows) * probes;
      for (int j = 0; j < p; ++j) {
        double m = (s2.head(rows) - 2.0 * dots.col(j).head(rows)).minCoeff();
        if (m < mins[static_cast<size_t>(j)]) mins[static_cast<size_t>(j)] = m;
      }
    }
  };

  if (workers <= 1) {
    scan(0, 0, count);
  } else {
    std::vector<std::thread> pool;
    long chunk_len = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long begin = w * chunk_len;
      long end = std::min(count, begin + chunk_len);
      if (begin >= end) break;
      pool.emplace_back(scan, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> mins(static_cast<size_t>(p), std::numeric_limits<double>::max());
  for (const auto& part : partial)
    for (int j = 0; j < p; ++j)
      mins[static_cast<size_t>(j)] = std::min(mins[static_cast<size_t>(j)],
                                              part[static_cast<size_t>(j)]);
  for (int j = 0; j < p; ++j) mins[static_cast<size_t>(j)] += probe_sq[j];
  return mins;
}

Eigen::MatrixXd draw_probes(const SubSphere& target, int probe_count,
                            std::uint64_t probe_seed) {
  const int n = target.ambient_dim();
  const int d = target.direction.dim();
  Eigen::MatrixXd probes(n, probe_count);
  for (int j = 0; j < probe_count; ++j) {
    rng::Stream stream(rng::mix(probe_seed, static_cast<std::uint64_t>(j) + 1));
    probes.col(j) =
        target.center + target.radius * (target.direction.basis() * stream.unit_vector(d));
  }
  return probes;
}

}  // namespace

double covering_radius(const OrbitSample& sample, const SubSphere& target,
                       int probe_count, std::uint64_t probe_seed) {
  if (sample.points.empty()) throw Error("covering_radius: empty sample");
  if (target.degenerate())
    throw DegenerateTarget("covering_radius: target has zero radius");
  if (probe_count < 1) throw Error("covering_radius: need at least one probe");

  Eigen::MatrixXd probes = draw_probes(target, probe_count, probe_seed);
  std::vector<double> mins = probe_min_sq(sample.points, probes);
  double worst = 0.0;
  for (double d2 : mins) worst = std::max(worst, d2);
  return std::sqrt(std::max(0.0, worst));
}

std::string to_string(DensityReport::Verdict verdict) {
  switch (verdict) {
    case DensityReport::Verdict::Dense:
      return "dense";
    case DensityReport::Verdict::Confined:
      return "confined";
    case DensityReport::Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

DensityReport density_verdict(const OrbitSample& sample, const SubSphere& target,
                              double threshold,
                              const std::vector<Subspace>& conserved_candidates,
                              const DensityOptions& opts) {
  if (threshold <= 0.0) throw Error("density_verdict: threshold must be > 0");
  DensityReport report(target);
  report.threshold = threshold;

  if (target.degenerate()) {
    // The target is the single point {x}; the orbit contains it.
    double best = std::numeric_limits<double>::max();
    for (const auto& pt : sample.points)
      best = std::min(best, (pt - target.center).norm());
    report.covering_radius_estimate = best;
    report.probes_used = 0;
    report.verdict = DensityReport::Verdict::Dense;
    report.note = "single-point target";
    return report;
  }

  report.probes_used = opts.probe_count;
  report.covering_radius_estimate =
      covering_radius(sample, target, opts.probe_count, opts.probe_seed);
  if (report.covering_radius_estimate < threshold) {
    report.verdict = DensityReport::Verdict::Dense;
    return report;
  }

  for (size_t c = 0; c < conserved_candidates.size(); ++c) {
    const Subspace& s = conserved_candidates[c];
    double lo = std::numeric_limits<double>::max();
    double hi = 0.0;
    for (const auto& pt : sample.points) {
      double v = s.project(pt).norm();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ConservedQuantity q;
    q.label = "proj-norm[" + std::to_string(c) + "] (dim " + std::to_string(s.dim()) + ")";
    q.reference = s.project(sample.seed_point).norm();
    q.max_deviation = hi - lo;
    report.conserved.quantities.push_back(q);
  }

  for (size_t c = 0; c < report.conserved.quantities.size(); ++c) {
    if (report.conserved.quantities[c].max_deviation < tol::kConserve &&
        static_cast<long>(sample.points.size()) >= opts.min_confinement_samples) {
      report.verdict = DensityReport::Verdict::Confined;
      report.confining_candidate = static_cast<int>(c);
      return report;
    }
  }

  report.verdict = DensityReport::Verdict::Inconclusive;
  if (!conserved_candidates.empty() &&
      static_cast<long>(sample.points.size()) < opts.min_confinement_samples)
    report.note = "sample too small to call confinement";
  return report;
}

InvarianceResult invariance_check(const std::vector<Vector>& set,
                                  const std::vector<OrthogonalMap>& maps,
                                  double tol_arg) {
  if (set.empty()) throw EmptySet("invariance_check: empty point set");
  const int n = static_cast<int>(set.front().size());
  for (const auto& v : set)
    if (static_cast<int>(v.size()) != n)
      throw DimensionMismatch("invariance_check: mixed point dimensions");

  InvarianceResult result;
  for (const auto& g : maps) {
    if (g.ambient_dim() != n)
      throw DimensionMismatch("invariance_check: map dimension mismatch");
    for (const auto& p : set) {
      Vector image = g.apply(p);
      double best = std::numeric_limits<double>::max();
      for (const auto& q : set) best = std::min(best, (image - q).norm());
      result.max_error = std::max(result.max_error, best);
    }
  }
  result.invariant = result.max_error < tol_arg;
  return result;
}

DensityReport extension_experiment(const Subspace& h, const Subspace& l,
                                   const Vector& x, long budget,
                                   const ExtensionOptions& opts) {
  if (h.ambient_dim() != l.ambient_dim())
    throw DimensionMismatch("extension_experiment: ambient dimensions differ");
  if (!(h.dim() < l.dim()))
    throw HypothesisViolated("extension_experiment: dim H < dim L fails");
  if (intersect(h, perp(l)).dim() != 0)
    throw HypothesisViolated("extension_experiment: H ∩ L^perp ≠ {o}");

  SubSphere target = subsphere(sum(h, l), x);
  std::vector<Generator> generators;
  generators.push_back(StabilizerSpec{perp(l)});
  generators.push_back(reflection(h));

  if (target.degenerate()) {
    OrbitSample trivial;
    trivial.seed_point = x;
    trivial.points = {x};
    trivial.word_policy = "degenerate-target";
    trivial.budget_used = 0;
    return density_verdict(trivial, target, opts.threshold, {}, opts.density);
  }

  OrbitSample sample = sample_orbit(generators, x, budget, opts.policy);
  return density_verdict(sample, target, opts.threshold, {}, opts.density);
}

}  // namespace symclose
