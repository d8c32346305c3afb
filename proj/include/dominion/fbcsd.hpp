#pragma once

// Basis-free dominance in the plane: a realization is good when some
// orthogonal basis sees no inter-color dominance. Lambda* is the probability
// that no such basis exists. Exact via witness pairs and one CSD instance per
// ordered bichromatic pair, plus a subset-enumeration oracle.
//
// Point indices are positions in x-order (x, then y) of the original
// coordinates; no rank transform, angles depend on the real geometry.

#include <array>
#include <optional>
#include <utility>

#include "dominion/csd_exact.hpp"
#include "dominion/dataset.hpp"
#include "dominion/number.hpp"

namespace dominion {

/// A projective direction, stored with angle in [0, pi).
struct Direction {
  Rational x, y;

  static Direction of(const Rational& dx, const Rational& dy);
  bool same_line(const Direction& o) const;
};

/// theta(l, l') > pi/2, where theta is swept clockwise from l to l'.
/// Throws std::invalid_argument when l and l' are the same line.
bool angle_gt_right(const Direction& l, const Direction& lp);

class CollinearError : public ValidationError {
 public:
  CollinearError(int a, int b, int c);
  const std::array<int, 3>& ids() const { return ids_; }

 private:
  std::array<int, 3> ids_;
};

/// Throws CollinearError naming the first collinear triple found.
void require_general_position(const Dataset& ds);

/// Stable sort by (x, y). Requires dimension 2.
Dataset x_ordered(const Dataset& ds);

struct Goodness {
  bool good = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (i*, j*), positions in the input
};

/// Every point in `subset` is taken as present; positions are the indices.
Goodness goodness_check(const Dataset& subset);

Rational pr_mono(const Dataset& ds);

struct Basis {
  std::array<Rational, 2> b1, b2;
};

/// <b1,p> >= <b1,q> and <b2,p> >= <b2,q>.
bool dominates_in_basis(const Basis& b, std::span<const Rational> p, std::span<const Rational> q);

struct WitnessReduction {
  std::size_t i_star = 0, j_star = 0;
  Basis basis;
  Rational delta;
  Dataset reduced;
};

/// `ordered` must already be in x-order; i*, j* are 0-based positions.
WitnessReduction build_reduced_instance(const Dataset& ordered, std::size_t i_star, std::size_t j_star);

/// Lambda* with every sub-instance solved by the range-tree sweep in T.
template <class T>
T lambda_star_as(const Dataset& ds);

Rational lambda_star(const Dataset& ds);

/// 1 - sum of realization probabilities of good subsets.
Rational lambda_star_bruteforce(const Dataset& ds, std::size_t cap = 12);

namespace detail {
Dataset checked_fbcsd_input(const Dataset& ds);
}

template <class T>
T lambda_star_as(const Dataset& ds) {
  const Dataset ordered = detail::checked_fbcsd_input(ds);
  const std::size_t n = ordered.size();
  T gamma_star = scalar_from<T>(pr_mono(ordered));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = ordered.points[i];
      const auto& b = ordered.points[j];
      if (i == j || a.color == b.color || sgn(a.prob) == 0 || sgn(b.prob) == 0) continue;
      const auto red = build_reduced_instance(ordered, i, j);
      gamma_star += scalar_from<T>(a.prob * b.prob) * gamma_rangetree<T>(red.reduced);
    }
  }
  return T(1) - gamma_star;
}

}  // namespace dominion
