#include "doctest.h"

#include "dominion/fpras.hpp"
#include "oracles.hpp"

using namespace dominion;

namespace {

StochasticPoint pt(int id, std::vector<long> c, int color, Rational prob) {
  StochasticPoint p{id, {}, color, std::move(prob)};
  for (long v : c) p.coords.emplace_back(v);
  return p;
}

Rational half() { return make_rational(1, 2); }

Dataset random_nd(std::mt19937_64& rng, int d, int n_max) {
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max));
  Dataset ds{d, {}};
  while (static_cast<int>(ds.size()) < n) {
    std::vector<long> c;
    for (int k = 0; k < d; ++k) c.push_back(static_cast<long>(rng() % (d == 1 ? 12 : 6)));
    auto p = pt(static_cast<int>(ds.size()) + 1, c, static_cast<int>(rng() % 3), oracle::random_prob(rng, true));
    bool dup = false;
    for (const auto& q : ds.points) dup = dup || q.coords == p.coords;
    if (!dup) ds.points.push_back(std::move(p));
  }
  return ds;
}

}  // namespace

TEST_CASE("event probabilities") {
  Dataset two{2, {pt(1, {1, 1}, 0, make_rational(1, 3)), pt(2, {2, 2}, 1, make_rational(2, 5))}};
  Dataset s2 = sort_by_probability(two);
  CHECK(s2.points[0].id == 2);
  CHECK(pr_event(s2, 1, 2) == make_rational(2, 15));

  Dataset three{2, {pt(1, {1, 1}, 0, half()), pt(2, {2, 2}, 1, half()), pt(3, {3, 3}, 0, half())}};
  Dataset s3 = sort_by_probability(three);
  CHECK(s3.points[0].id == 1);  // ties keep input order
  CHECK(s3.points[2].id == 3);
  CHECK(pr_event(s3, 1, 3) == make_rational(1, 8));
  CHECK_THROWS_AS(pr_event(s3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(pr_event(s3, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(pr_event(s3, 2, 4), std::invalid_argument);
}

TEST_CASE("events partition the realizations with two or more points") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 80; ++it) {
    Dataset s = sort_by_probability(random_nd(rng, 1 + it % 3, 9));
    Rational total = pr_at_most_one(s);
    for (std::size_t i = 1; i <= s.size(); ++i)
      for (std::size_t j = i + 1; j <= s.size(); ++j) total += pr_event(s, i, j);
    CHECK(total == 1);
  }
}

TEST_CASE("decomposition with exact conditionals reproduces lambda") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 80; ++it) {
    Dataset ds = random_nd(rng, 1 + it % 3, 9);
    CHECK(lambda_by_decomposition(ds) == 1 - oracle::gamma_by_subsets(ds));
  }
}

TEST_CASE("trivial estimates") {
  Dataset anti{2, {pt(1, {1, 5}, 0, half()), pt(2, {2, 4}, 1, half()), pt(3, {3, 3}, 2, make_rational(1, 3))}};
  Dataset sure{2, {pt(1, {1, 1}, 0, 1), pt(2, {2, 2}, 1, 1)}};
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    FprasConfig cfg;
    cfg.seed = seed;
    cfg.samples = 500;
    CHECK(estimate_lambda(anti, cfg).lambda == 0);
    CHECK(estimate_lambda(sure, cfg).lambda == 1);
  }
  FprasConfig cfg;
  CHECK(estimate_lambda(sure, cfg).samples == default_samples(2, make_rational(1, 4)));
  CHECK(default_samples(5, make_rational(1, 4)) == 500000);
  CHECK(default_samples(2, make_rational(1, 3)) == 2880);
  CHECK(default_samples(0, make_rational(1, 2)) == 1);
}

TEST_CASE("estimates are deterministic and in range") {
  std::mt19937_64 rng(4);
  Dataset ds = random_nd(rng, 3, 7);
  while (ds.size() < 4) ds = random_nd(rng, 3, 7);
  FprasConfig cfg;
  cfg.seed = 7;
  cfg.samples = 2000;
  auto a = estimate_lambda(ds, cfg);
  auto b = estimate_lambda(ds, cfg);
  CHECK(a.lambda == b.lambda);
  CHECK(a.lambda >= 0);
  CHECK(a.lambda <= 1);
  CHECK(a.terms.size() == ds.size() * (ds.size() - 1) / 2);
  for (const auto& t : a.terms) CHECK(t.hits <= a.samples);
  cfg.seed = 8;
  auto c = estimate_lambda(ds, cfg);
  CHECK(c.lambda >= 0);
}

TEST_CASE("estimate is close with many samples") {
  Dataset ds{2,
             {pt(1, {1, 1}, 0, make_rational(1, 2)), pt(2, {2, 3}, 1, make_rational(2, 3)),
              pt(3, {3, 2}, 0, make_rational(1, 4)), pt(4, {4, 4}, 1, make_rational(3, 5))}};
  Rational exact = 1 - oracle::gamma_by_subsets(ds);
  FprasConfig cfg;
  cfg.samples = 40000;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    cfg.seed = seed;
    Rational got = estimate_lambda(ds, cfg).lambda;
    double rel = std::abs(Rational(got - exact).get_d()) / exact.get_d();
    CHECK(rel < 0.05);
  }
}

TEST_CASE("exact bernoulli") {
  CounterRng rng(1, 2, 3);
  CHECK_FALSE(rng.bernoulli(0));
  CHECK(rng.bernoulli(1));
  const Rational ps[] = {make_rational(1, 3), make_rational(5, 8), make_rational(63, 64)};
  for (const auto& p : ps) {
    int hits = 0;
    const int trials = 40000;
    for (int k = 0; k < trials; ++k) {
      CounterRng r(11, 0, static_cast<std::uint64_t>(k));
      hits += r.bernoulli(p);
    }
    double f = static_cast<double>(hits) / trials;
    CHECK(std::abs(f - p.get_d()) < 0.01);
  }
  // a denominator beyond 64 bits takes the bignum path
  Rational big(BigInt("1", 10), BigInt("340282366920938463463374607431768211457", 10));
  big.canonicalize();
  Rational p = 1 - big;
  int hits = 0;
  for (int k = 0; k < 2000; ++k) {
    CounterRng r(5, 1, static_cast<std::uint64_t>(k));
    hits += r.bernoulli(p);
  }
  CHECK(hits == 2000);
  CounterRng a(3, 4, 5), b(3, 4, 5), c(3, 4, 6);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
}
