#include "doctest.h"

#include <map>
#include <set>

#include "dominion/fbcsd.hpp"
#include "oracles.hpp"

using namespace dominion;

namespace {

StochasticPoint pt(int id, long x, long y, int color, Rational prob = 1) {
  return StochasticPoint{id, {Rational(x), Rational(y)}, color, std::move(prob)};
}

Dataset rotate(const Dataset& ds, const Rational& c, const Rational& s) {
  Dataset out = ds;
  for (auto& p : out.points) {
    Rational x = p.coords[0], y = p.coords[1];
    p.coords = {c * x - s * y, s * x + c * y};
  }
  return out;
}

oracle::RandomInstance small_spec(int n_max) {
  oracle::RandomInstance spec;
  spec.n_min = 1;
  spec.n_max = n_max;
  spec.colors = 3;
  spec.coord_range = 20;
  return spec;
}

Rational gamma_star_by_rotation(const Dataset& ds) {
  Rational good = 0;
  const std::size_t n = ds.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Dataset sub{2, {}};
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < n; ++t) {
      if (mask >> t & 1) {
        sub.points.push_back(ds.points[t]);
        idx.push_back(t);
      }
    }
    if (oracle::good_by_rotation(sub)) good += realization_probability(ds, idx);
  }
  return good;
}

}  // namespace

TEST_CASE("directions and the right-angle test") {
  auto d = [](long x, long y) { return Direction::of(Rational(x), Rational(y)); };
  CHECK_FALSE(angle_gt_right(d(1, 0), d(0, 1)));
  CHECK(angle_gt_right(d(1, 0), d(1, 2)));
  CHECK_FALSE(angle_gt_right(d(1, 2), d(1, 0)));
  CHECK_FALSE(angle_gt_right(d(1, 1), d(-1, 1)));
  CHECK_FALSE(angle_gt_right(d(-1, 1), d(1, 1)));
  // representative does not matter
  CHECK(angle_gt_right(d(-2, 0), d(-1, -2)));
  CHECK_THROWS_AS(angle_gt_right(d(1, 2), d(-2, -4)), std::invalid_argument);
  CHECK_THROWS_AS(Direction::of(0, 0), std::invalid_argument);
  auto c = d(-3, -1);
  CHECK(c.x == 3);
  CHECK(c.y == 1);
}

TEST_CASE("goodness examples") {
  Dataset mono{2, {pt(1, 0, 0, 0), pt(2, 1, 1, 0), pt(3, 2, 5, 0)}};
  auto g = goodness_check(mono);
  CHECK(g.good);
  CHECK_FALSE(g.witness);

  Dataset two{2, {pt(1, 0, 0, 0), pt(2, 3, 1, 1)}};
  g = goodness_check(two);
  CHECK(g.good);
  REQUIRE(g.witness);
  CHECK(g.witness->first == 0);
  CHECK(g.witness->second == 1);

  Dataset star{2, {pt(1, -1, 2, 1), pt(2, 0, 0, 0), pt(3, 1, 0, 1), pt(4, 1, 2, 1)}};
  CHECK_FALSE(goodness_check(star).good);
  CHECK_FALSE(oracle::good_by_rotation(star));

  // two perpendicular inter-color directions: theta is exactly pi/2 both ways
  Dataset perp{2, {pt(1, 0, 0, 0), pt(2, 0, 1, 1), pt(3, 1, 0, 1)}};
  CHECK_FALSE(goodness_check(perp).good);
  CHECK_FALSE(oracle::good_by_rotation(perp));
}

TEST_CASE("goodness agrees with searching rotations") {
  std::mt19937_64 rng(41);
  int good = 0;
  for (int it = 0; it < 400; ++it) {
    Dataset ds = oracle::random_general_2d(rng, small_spec(7));
    bool want = oracle::good_by_rotation(ds);
    CHECK(goodness_check(ds).good == want);
    good += want;
  }
  CHECK(good > 20);
  CHECK(good < 380);
}

TEST_CASE("pr_mono") {
  Dataset mono{2, {pt(1, 0, 0, 4, make_rational(1, 3)), pt(2, 1, 5, 4, make_rational(1, 7))}};
  CHECK(pr_mono(mono) == 1);
  Dataset two{2, {pt(1, 0, 0, 1, make_rational(1, 2)), pt(2, 1, 1, 2, make_rational(1, 2))}};
  CHECK(pr_mono(two) == make_rational(3, 4));

  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    Dataset ds = oracle::random_2d(rng, small_spec(10));
    Rational want = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << ds.size()); ++mask) {
      std::vector<std::size_t> idx;
      std::set<int> colors;
      for (std::size_t t = 0; t < ds.size(); ++t) {
        if (mask >> t & 1) {
          idx.push_back(t);
          colors.insert(ds.points[t].color);
        }
      }
      if (colors.size() <= 1) want += realization_probability(ds, idx);
    }
    CHECK(pr_mono(ds) == want);
  }
}

TEST_CASE("lambda star examples") {
  Dataset two{2, {pt(1, 0, 0, 0, make_rational(2, 3)), pt(2, 3, 4, 1, make_rational(1, 5))}};
  CHECK(lambda_star(two) == 0);
  CHECK(lambda_star_bruteforce(two) == 0);

  Dataset mono{2, {pt(1, 0, 0, 2), pt(2, 1, 3, 2), pt(3, 4, 1, 2)}};
  CHECK(lambda_star(mono) == 0);

  Dataset star{2, {pt(1, 0, 0, 0), pt(2, 1, 0, 1), pt(3, 1, 2, 1), pt(4, -1, 2, 1)}};
  CHECK(lambda_star(star) == 1);
  CHECK(lambda_star_bruteforce(star) == 1);
}

TEST_CASE("lambda star matches both oracles") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 60; ++it) {
    Dataset ds = oracle::random_general_2d(rng, small_spec(7));
    Rational brute = lambda_star_bruteforce(ds);
    CHECK(lambda_star(ds) == brute);
    CHECK(brute == 1 - gamma_star_by_rotation(ds));
    CHECK(brute <= 1 - oracle::gamma_by_subsets(ds));
  }
}

TEST_CASE("invariances of lambda star") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 25; ++it) {
    Dataset ds = oracle::random_general_2d(rng, small_spec(7));
    Rational base = lambda_star(ds);
    CHECK(lambda_star(rotate(ds, make_rational(3, 5), make_rational(4, 5))) == base);
    Dataset moved = ds;
    for (auto& p : moved.points) {
      p.coords[0] = p.coords[0] * 3 + make_rational(-7, 2);
      p.coords[1] = p.coords[1] * 3 + 11;
      p.color = 10 - p.color;
    }
    CHECK(lambda_star(moved) == base);
    Dataset mirrored = ds;
    for (auto& p : mirrored.points) p.coords[0] = -p.coords[0];
    CHECK(lambda_star(mirrored) == base);
  }
}

TEST_CASE("witness pairs partition the good subsets") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 15; ++it) {
    Dataset ds = x_ordered(oracle::random_general_2d(rng, small_spec(6)));
    const std::size_t n = ds.size();
    std::map<std::pair<std::size_t, std::size_t>, Rational> by_witness;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      Dataset sub{2, {}};
      std::vector<std::size_t> idx;
      for (std::size_t t = 0; t < n; ++t) {
        if (mask >> t & 1) {
          sub.points.push_back(ds.points[t]);
          idx.push_back(t);
        }
      }
      auto g = goodness_check(sub);
      if (g.good && g.witness) {
        auto key = std::make_pair(idx[g.witness->first], idx[g.witness->second]);
        CHECK(key.first < key.second);
        by_witness[key] += realization_probability(ds, idx);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || ds.points[i].color == ds.points[j].color) continue;
        auto red = build_reduced_instance(ds, i, j);
        Rational want = by_witness.count({i, j}) ? by_witness[{i, j}] : Rational(0);
        CHECK(ds.points[i].prob * ds.points[j].prob * gamma_bruteforce(red.reduced) == want);
      }
    }
  }
}

TEST_CASE("reduced instance") {
  std::mt19937_64 rng(19);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    Dataset ds = x_ordered(oracle::random_general_2d(rng, small_spec(8)));
    const std::size_t n = ds.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || ds.points[i].color == ds.points[j].color) continue;
        auto red = build_reduced_instance(ds, i, j);
        CHECK(red.reduced.points[i].prob == 1);
        CHECK(red.reduced.points[j].prob == 1);
        CHECK(sgn(red.delta) > 0);
        const auto& B = red.basis;
        // scaling either basis vector by a positive factor changes nothing
        Basis scaled{{B.b1[0] * 3, B.b1[1] * 3}, {B.b2[0] / 5, B.b2[1] / 5}};
        auto ip = [](const std::array<Rational, 2>& b, const StochasticPoint& p) -> Rational {
          return b[0] * p.coords[0] + b[1] * p.coords[1];
        };
        for (std::size_t p = 0; p < n; ++p) {
          for (std::size_t q = 0; q < n; ++q) {
            if (p == q || ds.points[p].color == ds.points[q].color) continue;
            bool dom_b = dominates_in_basis(B, ds.points[p].coords, ds.points[q].coords);
            CHECK(dom_b == dominates_in_basis(scaled, ds.points[p].coords, ds.points[q].coords));
            bool want = dom_b && (ip(B.b2, ds.points[p]) > ip(B.b2, ds.points[q]) || std::max(p, q) > j);
            CHECK(dominates(red.reduced.points[p].coords, red.reduced.points[q].coords) == want);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("collinear input is rejected with the triple") {
  Dataset ds{2, {pt(7, 0, 0, 0), pt(3, 5, 1, 1), pt(9, 2, 2, 1), pt(4, 4, 4, 0)}};
  try {
    lambda_star(ds);
    FAIL("expected CollinearError");
  } catch (const CollinearError& e) {
    CHECK(e.code() == "collinear");
    std::array<int, 3> ids = e.ids();
    std::sort(ids.begin(), ids.end());
    CHECK(ids == std::array<int, 3>{4, 7, 9});
    CHECK(std::string(e.what()).find("collinear") != std::string::npos);
  }
  CHECK_THROWS_AS(lambda_star_bruteforce(ds), CollinearError);
  Dataset d3{3, {StochasticPoint{1, {1, 2, 3}, 0, 1}}};
  CHECK_THROWS_AS(lambda_star(d3), ValidationError);
}
