#pragma once

// Randomized (1 +- eps) estimator for Lambda in any dimension.
//
// Points are sorted by probability, largest first. E_{i,j} is the event that
// a_i and a_j are the two highest-index present points; Lambda is the sum of
// Pr[E_{i,j}] times the conditional probability of an inter-color dominance,
// and the conditional is estimated by sampling the prefix a_1..a_{i-1}.

#include <cstdint>
#include <optional>
#include <vector>

#include "dominion/dataset.hpp"
#include "dominion/number.hpp"

namespace dominion {

struct FprasConfig {
  Rational epsilon{1, 4};
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;  // default ceil(10 n^5 / eps^2)
};

/// ceil(10 n^5 / eps^2), at least 1.
std::uint64_t default_samples(std::size_t n, const Rational& epsilon);

/// Stable sort by probability, descending; ties keep input order.
Dataset sort_by_probability(const Dataset& ds);

/// Pr[E_{i,j}] on a dataset already sorted by sort_by_probability, 1-based
/// indices with i < j <= n.
Rational pr_event(const Dataset& sorted, std::size_t i, std::size_t j);

/// Probability that at most one point is present.
Rational pr_at_most_one(const Dataset& ds);

/// Exact Cond_{i,j} by enumerating subsets of the prefix (i - 1 <= 62).
Rational cond_exact(const Dataset& sorted, std::size_t i, std::size_t j);

struct EventTerm {
  std::size_t i = 0, j = 0;
  Rational pr;
  std::uint64_t hits = 0;  // Est_{i,j} = hits / samples
};

struct FprasResult {
  Rational lambda;
  Rational epsilon;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<EventTerm> terms;
};

FprasResult estimate_lambda(const Dataset& ds, const FprasConfig& cfg);

/// The decomposition with exact conditionals; equals Lambda exactly.
Rational lambda_by_decomposition(const Dataset& ds, std::size_t cap = 20);

/// Counter-based generator: a pure function of (key, position).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t level, std::uint64_t sample);
  std::uint64_t next();
  bool bit();
  /// Exact Bernoulli(p) for rational p in [0,1], consuming random bits
  /// against the binary expansion of p.
  bool bernoulli(const Rational& p);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t buffer_ = 0;
  int left_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace dominion
