#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace symclose::rng {

/// splitmix64 step; the standard seed-mixing primitive.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Mixes independent seed components into one stream seed.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  std::uint64_t s = a;
  splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL;
  splitmix64(s);
  s ^= c + 0xc2b2ae3d27d4eb4fULL;
  return splitmix64(s);
}

/// Deterministic uniform/Gaussian stream. Box-Muller on explicit 64-bit
/// uniforms, so sequences are identical across standard libraries.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, m).
  std::uint64_t below(std::uint64_t m) { return next_u64() % m; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Eigen::MatrixXd gaussian_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
    return m;
  }

  /// Uniform point on the unit sphere of R^n.
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double nrm = v.norm();
    while (nrm < 1e-12) {  // astronomically unlikely; redraw
      v = gaussian_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace symclose::rng
