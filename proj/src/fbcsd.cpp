#include "dominion/fbcsd.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dominion {

Direction Direction::of(const Rational& dx, const Rational& dy) {
  if (sgn(dx) == 0 && sgn(dy) == 0) throw std::invalid_argument("zero vector has no direction");
  if (sgn(dy) < 0 || (sgn(dy) == 0 && sgn(dx) < 0)) return Direction{-dx, -dy};
  return Direction{dx, dy};
}

bool Direction::same_line(const Direction& o) const { return x * o.y - y * o.x == 0; }

bool angle_gt_right(const Direction& l, const Direction& lp) {
  if (l.same_line(lp)) throw std::invalid_argument("angle_gt_right: both arguments are the same line");
  const Direction u = Direction::of(l.x, l.y);
  const Direction v = Direction::of(lp.x, lp.y);
  const Rational cross = v.x * u.y - v.y * u.x;
  const Rational dot = u.x * v.x + u.y * v.y;
  return sgn(cross) * sgn(dot) < 0;
}

CollinearError::CollinearError(int a, int b, int c)
    : ValidationError("collinear", "points " + std::to_string(a) + ", " + std::to_string(b) + " and " +
                                       std::to_string(c) + " are collinear"),
      ids_{a, b, c} {}

namespace {

Rational orient(const StochasticPoint& a, const StochasticPoint& b, const StochasticPoint& c) {
  return (b.coords[0] - a.coords[0]) * (c.coords[1] - a.coords[1]) -
         (b.coords[1] - a.coords[1]) * (c.coords[0] - a.coords[0]);
}

Rational dot(const std::array<Rational, 2>& b, std::span<const Rational> p) { return b[0] * p[0] + b[1] * p[1]; }

}  // namespace

void require_general_position(const Dataset& ds) {
  const auto& pts = ds.points;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        if (sgn(orient(pts[a], pts[b], pts[c])) == 0) throw CollinearError(pts[a].id, pts[b].id, pts[c].id);
      }
    }
  }
}

Dataset x_ordered(const Dataset& ds) {
  if (ds.dimension != 2) throw ValidationError("bad_dimension", "basis-free solver needs 2D points");
  Dataset out = ds;
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const StochasticPoint& a, const StochasticPoint& b) { return a.coords < b.coords; });
  return out;
}

Goodness goodness_check(const Dataset& subset) {
  struct Group {
    Direction dir;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };
  const auto& pts = subset.points;
  std::vector<Group> groups;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = p + 1; q < pts.size(); ++q) {
      if (pts[p].color == pts[q].color) continue;
      Direction d = Direction::of(pts[q].coords[0] - pts[p].coords[0], pts[q].coords[1] - pts[p].coords[1]);
      auto g = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.dir.same_line(d); });
      if (g == groups.end()) {
        groups.push_back(Group{d, {{p, q}}});
      } else {
        g->pairs.emplace_back(p, q);
      }
    }
  }
  Goodness out;
  if (groups.empty()) {
    out.good = true;
    return out;
  }
  for (const auto& c : groups) {
    bool beats_all = true;
    for (const auto& d : groups) {
      if (&d != &c && !angle_gt_right(c.dir, d.dir)) {
        beats_all = false;
        break;
      }
    }
    if (!beats_all) continue;
    out.good = true;
    std::pair<std::size_t, std::size_t> best = c.pairs.front();
    for (const auto& pr : c.pairs) {
      if (pr.second > best.second) best = pr;
    }
    for (const auto& pr : c.pairs) {
      if (pr.second == best.second && pr.first != best.first) {
        throw CollinearError(pts[pr.first].id, pts[best.first].id, pts[best.second].id);
      }
    }
    out.witness = best;
    return out;
  }
  return out;
}

Rational pr_mono(const Dataset& ds) {
  Rational none = 1;
  std::set<int> colors;
  for (const auto& p : ds.points) {
    none *= 1 - p.prob;
    colors.insert(p.color);
  }
  Rational total = none;
  for (int c : colors) {
    Rational others = 1, mine = 1;
    for (const auto& p : ds.points) (p.color == c ? mine : others) *= 1 - p.prob;
    total += others * (1 - mine);
  }
  return total;
}

bool dominates_in_basis(const Basis& b, std::span<const Rational> p, std::span<const Rational> q) {
  return dot(b.b1, p) >= dot(b.b1, q) && dot(b.b2, p) >= dot(b.b2, q);
}

WitnessReduction build_reduced_instance(const Dataset& ordered, std::size_t i_star, std::size_t j_star) {
  const auto& pts = ordered.points;
  if (i_star >= pts.size() || j_star >= pts.size()) throw std::invalid_argument("witness index out of range");
  if (pts[i_star].color == pts[j_star].color) throw std::invalid_argument("witness pair must be bichromatic");

  WitnessReduction out;
  out.i_star = i_star;
  out.j_star = j_star;
  const auto& a = pts[i_star].coords;
  const auto& b = pts[j_star].coords;
  out.basis.b1 = {a[0] - b[0], a[1] - b[1]};
  out.basis.b2 = {out.basis.b1[1], -out.basis.b1[0]};

  const std::size_t n = pts.size();
  std::vector<Rational> s1(n), s2(n);
  for (std::size_t p = 0; p < n; ++p) {
    s1[p] = dot(out.basis.b1, pts[p].coords);
    s2[p] = dot(out.basis.b2, pts[p].coords);
  }
  std::vector<Rational> sorted_s2 = s2;
  std::sort(sorted_s2.begin(), sorted_s2.end());
  std::optional<Rational> gap;
  for (std::size_t k = 1; k < n; ++k) {
    Rational g = sorted_s2[k] - sorted_s2[k - 1];
    if (sgn(g) != 0 && (!gap || g < *gap)) gap = g;
  }
  out.delta = gap ? Rational(*gap / 2) : Rational(1);

  out.reduced.dimension = 2;
  for (std::size_t p = 0; p < n; ++p) {
    bool shift = false;
    if (p <= j_star) {
      for (std::size_t q = 0; q <= j_star && !shift; ++q) {
        shift = pts[p].color != pts[q].color && s2[p] == s2[q] && s1[p] >= s1[q];
      }
    }
    StochasticPoint sp = pts[p];
    sp.coords = {shift ? Rational(s2[p] - out.delta) : s2[p], s1[p]};
    if (p == i_star || p == j_star) sp.prob = 1;
    out.reduced.points.push_back(std::move(sp));
  }
  return out;
}

namespace detail {

Dataset checked_fbcsd_input(const Dataset& ds) {
  validate(ds);
  Dataset ordered = x_ordered(ds);
  require_general_position(ordered);
  return ordered;
}

}  // namespace detail

Rational lambda_star(const Dataset& ds) { return lambda_star_as<Rational>(ds); }

Rational lambda_star_bruteforce(const Dataset& ds, std::size_t cap) {
  const Dataset ordered = detail::checked_fbcsd_input(ds);
  const std::size_t n = ordered.size();
  if (n > cap || n > 30) throw CapExceeded("lambda_star_bruteforce: " + std::to_string(n) + " points exceeds cap");
  Rational good = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Rational pr = 1;
    Dataset sub;
    sub.dimension = 2;
    for (std::size_t t = 0; t < n; ++t) {
      if (mask >> t & 1) {
        pr *= ordered.points[t].prob;
        sub.points.push_back(ordered.points[t]);
      } else {
        pr *= 1 - ordered.points[t].prob;
      }
    }
    if (sgn(pr) != 0 && goodness_check(sub).good) good += pr;
  }
  return 1 - good;
}

}  // namespace dominion
