#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace symclose::detail {

using mpreal = boost::multiprecision::mpfr_float;

struct PslqOutcome {
  enum class Kind { RelationFound, NoRelationAtBound, Inconclusive };

  Kind kind = Kind::Inconclusive;
  std::optional<std::vector<long long>> relation;
  bool timed_out = false;
  std::string note;
};

/// PSLQ over the given values (all nonzero) at the caller's current mpfr
/// default precision. Searches for an integer relation with max coefficient
/// magnitude <= bound; `residual_eps` is the verification threshold a
/// candidate relation must meet.
PslqOutcome pslq(const std::vector<mpreal>& values, long long bound,
                 const mpreal& residual_eps,
                 std::optional<std::chrono::steady_clock::time_point> deadline);

}  // namespace symclose::detail
