#include "relation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace symclose::detail {

namespace {

using boost::multiprecision::cpp_int;

using Mat = std::vector<std::vector<mpreal>>;
using IMat = std::vector<std::vector<cpp_int>>;

bool deadline_hit(const std::optional<std::chrono::steady_clock::time_point>& deadline) {
  return deadline && std::chrono::steady_clock::now() > *deadline;
}

}  // namespace

PslqOutcome pslq(const std::vector<mpreal>& values, long long bound,
                 const mpreal& residual_eps,
                 std::optional<std::chrono::steady_clock::time_point> deadline) {
  const int n = static_cast<int>(values.size());
  PslqOutcome out;
  if (n < 2) {
    out.note = "need at least two values";
    return out;
  }

  const mpreal gamma = sqrt(mpreal(4) / 3);
  // Detection threshold on the normalized y entries; candidates are verified
  // against residual_eps afterwards.
  const mpreal detect_eps =
      pow(mpreal(10), -(static_cast<long>(mpreal::default_precision()) - 8));
  // Any relation with max-norm <= bound has 2-norm <= bound * sqrt(n);
  // PSLQ's running bound certifies exclusion past that.
  const mpreal norm_bound = mpreal(bound) * sqrt(mpreal(n));

  // Partial norms and normalized input.
  std::vector<mpreal> s(static_cast<size_t>(n));
  {
    mpreal acc = 0;
    for (int j = n - 1; j >= 0; --j) {
      acc += values[static_cast<size_t>(j)] * values[static_cast<size_t>(j)];
      s[static_cast<size_t>(j)] = sqrt(acc);
    }
  }
  std::vector<mpreal> y(static_cast<size_t>(n));
  {
    mpreal inv = 1 / s[0];
    for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = values[static_cast<size_t>(j)] * inv;
    for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] *= inv;
  }

  // Lower-trapezoidal H (n x n-1).
  Mat h(static_cast<size_t>(n), std::vector<mpreal>(static_cast<size_t>(n - 1), mpreal(0)));
  for (int j = 0; j < n - 1; ++j) {
    h[static_cast<size_t>(j)][static_cast<size_t>(j)] =
        s[static_cast<size_t>(j + 1)] / s[static_cast<size_t>(j)];
    mpreal t = y[static_cast<size_t>(j)] /
               (s[static_cast<size_t>(j)] * s[static_cast<size_t>(j + 1)]);
    for (int i = j + 1; i < n; ++i)
      h[static_cast<size_t>(i)][static_cast<size_t>(j)] = -y[static_cast<size_t>(i)] * t;
  }

  IMat b(static_cast<size_t>(n), std::vector<cpp_int>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

  auto reduce_row = [&](int i, int j) {
    if (h[static_cast<size_t>(j)][static_cast<size_t>(j)] == 0) return;
    mpreal q = h[static_cast<size_t>(i)][static_cast<size_t>(j)] /
               h[static_cast<size_t>(j)][static_cast<size_t>(j)];
    mpreal t = round(q);
    if (t == 0) return;
    cpp_int ti = t.convert_to<cpp_int>();
    y[static_cast<size_t>(j)] += t * y[static_cast<size_t>(i)];
    for (int k = 0; k <= j; ++k)
      h[static_cast<size_t>(i)][static_cast<size_t>(k)] -=
          t * h[static_cast<size_t>(j)][static_cast<size_t>(k)];
    for (int k = 0; k < n; ++k)
      b[static_cast<size_t>(k)][static_cast<size_t>(j)] +=
          ti * b[static_cast<size_t>(k)][static_cast<size_t>(i)];
  };

  auto finalize_candidate = [&](int idx) -> bool {
    // Column idx of B holds the candidate relation.
    std::vector<long long> rel(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      const cpp_int& c = b[static_cast<size_t>(k)][static_cast<size_t>(idx)];
      if (c > std::numeric_limits<long long>::max() ||
          c < std::numeric_limits<long long>::min()) {
        out.note = "candidate coefficients overflow";
        return false;
      }
      rel[static_cast<size_t>(k)] = c.convert_to<long long>();
    }
    long long maxc = 0;
    for (long long c : rel) maxc = std::max(maxc, std::llabs(c));
    if (maxc == 0 || maxc > bound) {
      out.note = "candidate exceeds coefficient bound";
      return false;
    }
    mpreal dot = 0;
    for (int k = 0; k < n; ++k) dot += mpreal(rel[static_cast<size_t>(k)]) * values[static_cast<size_t>(k)];
    if (abs(dot) >= residual_eps) {
      out.note = "candidate fails residual verification";
      return false;
    }
    for (long long c : rel) {
      if (c > 0) break;
      if (c < 0) {
        for (auto& v : rel) v = -v;
        break;
      }
    }
    out.kind = PslqOutcome::Kind::RelationFound;
    out.relation = std::move(rel);
    return true;
  };

  // Index of the smallest |y| entry, or -1 when none has collapsed.
  auto detect = [&]() -> int {
    int best_idx = 0;
    mpreal ymin = abs(y[0]);
    for (int j = 1; j < n; ++j) {
      mpreal a = abs(y[static_cast<size_t>(j)]);
      if (a < ymin) {
        ymin = a;
        best_idx = j;
      }
    }
    return ymin < detect_eps ? best_idx : -1;
  };

  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= 0; --j) reduce_row(i, j);
  if (int idx = detect(); idx >= 0) {
    if (finalize_candidate(idx)) return out;
    out.kind = PslqOutcome::Kind::Inconclusive;
    return out;
  }

  const long max_iter = 40000L * n;
  for (long iter = 0; iter < max_iter; ++iter) {
    if (deadline_hit(deadline)) {
      out.timed_out = true;
      out.note = "deadline expired";
      return out;
    }

    // Step 1: pick the row maximizing gamma^j |H_jj|.
    int m = 0;
    {
      mpreal best = -1, g = 1;
      for (int j = 0; j < n - 1; ++j) {
        g *= gamma;
        mpreal v = g * abs(h[static_cast<size_t>(j)][static_cast<size_t>(j)]);
        if (v > best) {
          best = v;
          m = j;
        }
      }
    }

    // Step 2: swap rows m, m+1 of y and H; columns m, m+1 of B.
    std::swap(y[static_cast<size_t>(m)], y[static_cast<size_t>(m + 1)]);
    std::swap(h[static_cast<size_t>(m)], h[static_cast<size_t>(m + 1)]);
    for (int k = 0; k < n; ++k)
      std::swap(b[static_cast<size_t>(k)][static_cast<size_t>(m)],
                b[static_cast<size_t>(k)][static_cast<size_t>(m + 1)]);

    // Step 3: restore lower-trapezoidal form with a Givens rotation.
    if (m < n - 2) {
      mpreal t0 = sqrt(h[static_cast<size_t>(m)][static_cast<size_t>(m)] *
                           h[static_cast<size_t>(m)][static_cast<size_t>(m)] +
                       h[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] *
                           h[static_cast<size_t>(m)][static_cast<size_t>(m + 1)]);
      if (t0 > 0) {
        mpreal c = h[static_cast<size_t>(m)][static_cast<size_t>(m)] / t0;
        mpreal sn = h[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] / t0;
        for (int i = m; i < n; ++i) {
          mpreal a = h[static_cast<size_t>(i)][static_cast<size_t>(m)];
          mpreal d = h[static_cast<size_t>(i)][static_cast<size_t>(m + 1)];
          h[static_cast<size_t>(i)][static_cast<size_t>(m)] = c * a + sn * d;
          h[static_cast<size_t>(i)][static_cast<size_t>(m + 1)] = c * d - sn * a;
        }
      }
    }

    // Step 4: reduce the rows the swap disturbed.
    for (int i = m + 1; i < n; ++i)
      for (int j = std::min(i - 1, m + 1); j >= 0; --j) reduce_row(i, j);

    // Detection: a collapsed y entry exposes a relation in B.
    if (int idx = detect(); idx >= 0) {
      if (finalize_candidate(idx)) return out;
      out.kind = PslqOutcome::Kind::Inconclusive;
      return out;
    }

    // Exclusion: 1 / max|H_jj| lower-bounds the norm of any relation.
    mpreal hmax = 0;
    for (int j = 0; j < n - 1; ++j) {
      mpreal a = abs(h[static_cast<size_t>(j)][static_cast<size_t>(j)]);
      if (a > hmax) hmax = a;
    }
    if (hmax > 0 && 1 / hmax > norm_bound) {
      out.kind = PslqOutcome::Kind::NoRelationAtBound;
      return out;
    }
  }

  out.note = "iteration cap reached";
  return out;
}

}  // namespace symclose::detail
