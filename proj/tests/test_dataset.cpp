#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "dominion/dataset.hpp"

using namespace dominion;

namespace {

StochasticPoint pt(int id, Rational x, Rational y, int color, Rational prob = make_rational(1, 2)) {
  return StochasticPoint{id, {std::move(x), std::move(y)}, color, std::move(prob)};
}

Dataset ds2(std::vector<StochasticPoint> pts) { return Dataset{2, std::move(pts)}; }

std::vector<Rational> v(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("dominates") {
  CHECK(dominates(v({2, 2}), v({1, 1})));
  CHECK(dominates(v({1, 1}), v({1, 1})));
  CHECK_FALSE(dominates(v({2, 0}), v({1, 1})));
  CHECK_THROWS_AS(dominates(v({1, 2}), v({1})), std::invalid_argument);
}

TEST_CASE("regularize examples") {
  auto a = regularize(ds2({pt(1, make_rational(1, 2), 3, 0), pt(2, 2, 1, 1)}));
  REQUIRE(a.size() == 2);
  CHECK(a.points[0].coords == std::vector<int>{1, 2});
  CHECK(a.points[1].coords == std::vector<int>{2, 1});

  auto tied = ds2({pt(1, 1, 1, 0), pt(2, 1, 2, 1)});
  auto b = regularize(tied);
  CHECK(b.points[0].coords == std::vector<int>{1, 1});
  CHECK(b.points[1].coords == std::vector<int>{2, 2});
  CHECK(edges_by_id(build_dominance_graph(tied)) == edges_by_id(build_dominance_graph(to_dataset(b))));

  auto c = regularize(ds2({pt(1, 1, 1, 0), pt(2, 2, 2, 0)}));
  CHECK(c.points[0].coords == std::vector<int>{1, 1});
  CHECK(c.points[1].coords == std::vector<int>{2, 2});
}

TEST_CASE("regularize rejects duplicates") {
  auto d = ds2({pt(1, 1, 1, 0), pt(2, 1, 1, 1)});
  try {
    regularize(d);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "duplicate_point");
  }
}

TEST_CASE("validation codes") {
  auto code_of = [](const Dataset& d) {
    try {
      validate(d);
    } catch (const ValidationError& e) {
      return e.code();
    }
    return std::string("ok");
  };
  CHECK(code_of(ds2({pt(1, 1, 1, 0, 2)})) == "bad_probability");
  CHECK(code_of(ds2({pt(1, 1, 1, -1)})) == "bad_color");
  CHECK(code_of(ds2({pt(1, 1, 1, 0), pt(1, 2, 2, 0)})) == "duplicate_id");
  CHECK(code_of(Dataset{3, {pt(1, 1, 1, 0)}}) == "dimension_mismatch");
  CHECK(code_of(ds2({pt(1, 1, 1, 0)})) == "ok");
}

TEST_CASE("regularize preserves the dominance graph on tied inputs") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % (d == 1 ? 4 : 9));
    Dataset ds{d, {}};
    int id = 1;
    while (static_cast<int>(ds.size()) < n) {
      StochasticPoint p{id, {}, static_cast<int>(rng() % 3), make_rational(1, 2)};
      for (int k = 0; k < d; ++k) p.coords.emplace_back(static_cast<long>(rng() % 4));
      bool dup = false;
      for (const auto& q : ds.points) dup = dup || q.coords == p.coords;
      if (dup) continue;
      ds.points.push_back(p);
      ++id;
    }
    auto rd = regularize(ds);
    for (int axis = 0; axis < d; ++axis) {
      std::vector<int> col;
      for (const auto& p : rd.points) col.push_back(p.coords[static_cast<std::size_t>(axis)]);
      std::sort(col.begin(), col.end());
      for (int k = 0; k < n; ++k) CHECK(col[static_cast<std::size_t>(k)] == k + 1);
    }
    for (std::size_t k = 1; k < rd.size(); ++k) CHECK(rd.points[k - 1].coords[0] < rd.points[k].coords[0]);
    CHECK(edges_by_id(build_dominance_graph(ds)) == edges_by_id(build_dominance_graph(to_dataset(rd))));
  }
}

TEST_CASE("dominance graph") {
  CHECK(build_dominance_graph(ds2({pt(1, 1, 1, 1), pt(2, 2, 2, 2)})).edges.size() == 1);
  CHECK(build_dominance_graph(ds2({pt(1, 1, 1, 1), pt(2, 2, 2, 1)})).edges.empty());
  CHECK(build_dominance_graph(ds2({pt(1, 1, 3, 0), pt(2, 2, 2, 1), pt(3, 3, 1, 2)})).edges.empty());
}

TEST_CASE("z prefix") {
  const int rrbb[] = {0, 0, 1, 1};
  const int r[] = {0};
  const int brb[] = {1, 0, 1};
  CHECK(z_prefix_length(rrbb) == 2);
  CHECK(z_prefix_length(r) == 0);
  CHECK(z_prefix_length(brb) == 2);
  CHECK(z_prefix_length(std::span<const int>{}) == 0);
}

TEST_CASE("intercolor dominance and realization probability") {
  CHECK(has_intercolor_dominance(ds2({pt(1, 1, 1, 0), pt(2, 2, 2, 1)})));
  CHECK_FALSE(has_intercolor_dominance(ds2({pt(1, 1, 1, 0), pt(2, 2, 2, 0), pt(3, 3, 3, 0)})));
  CHECK_FALSE(has_intercolor_dominance(ds2({pt(1, 1, 3, 0), pt(2, 3, 1, 1)})));

  auto two = ds2({pt(1, 1, 1, 0), pt(2, 2, 2, 1)});
  const std::size_t both[] = {0, 1};
  CHECK(realization_probability(two, both) == make_rational(1, 4));
  auto zero = ds2({pt(1, 1, 1, 0, 0), pt(2, 2, 2, 1)});
  const std::size_t first[] = {0};
  CHECK(realization_probability(zero, first) == 0);
  auto three = ds2({pt(1, 1, 1, 0, make_rational(1, 2)), pt(2, 2, 2, 0, make_rational(1, 3)),
                    pt(3, 3, 3, 0, 1)});
  const std::size_t odd[] = {0, 2};
  CHECK(realization_probability(three, odd) == make_rational(1, 3));
}

TEST_CASE("min-point decomposition holds on every subset") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<int> ys(static_cast<std::size_t>(n));
    std::iota(ys.begin(), ys.end(), 1);
    std::shuffle(ys.begin(), ys.end(), rng);
    Dataset ds{2, {}};
    for (int i = 0; i < n; ++i) {
      ds.points.push_back(pt(i + 1, i + 1, ys[static_cast<std::size_t>(i)], static_cast<int>(rng() % 3)));
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> sub;
      std::vector<int> colors;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) {
          sub.push_back(static_cast<std::size_t>(i));
          colors.push_back(ds.points[static_cast<std::size_t>(i)].color);
        }
      }
      const std::size_t z = z_prefix_length(colors);
      std::vector<std::size_t> zs(sub.begin(), sub.begin() + static_cast<std::ptrdiff_t>(z));
      int zmin = 1 << 30, rest_max = -1;
      for (std::size_t k = 0; k < sub.size(); ++k) {
        int y = ys[sub[k]];
        if (k < z) {
          zmin = std::min(zmin, y);
        } else {
          rest_max = std::max(rest_max, y);
        }
      }
      const bool clean = !has_intercolor_dominance(ds, sub);
      const bool via_split = !has_intercolor_dominance(ds, zs) && zmin > rest_max;
      CHECK(clean == via_split);
    }
  }
}
