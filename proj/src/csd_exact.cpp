#include "dominion/csd_exact.hpp"

#include <bit>

namespace dominion {

PreparedInstance prepare_2d(const Dataset& ds) {
  validate(ds);
  if (ds.dimension != 2) {
    throw ValidationError("bad_dimension", "exact solvers need dimension 2, got " + std::to_string(ds.dimension));
  }
  const RegularizedDataset rd = regularize(prune_impossible(ds));
  PreparedInstance inst;
  inst.n = static_cast<int>(rd.size());
  int max_color = -1;
  for (const auto& p : rd.points) max_color = std::max(max_color, p.color);
  inst.dummy_color = max_color + 1;
  inst.y.push_back(inst.n + 1);
  inst.color.push_back(inst.dummy_color);
  inst.prob.emplace_back(1);
  inst.ids.push_back(0);
  for (const auto& p : rd.points) {
    inst.y.push_back(p.coords[1]);
    inst.color.push_back(p.color);
    inst.prob.push_back(p.prob);
    inst.ids.push_back(p.id);
  }
  return inst;
}

std::vector<std::pair<int, int>> legal_pairs(const PreparedInstance& inst) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= inst.n; ++i) {
    std::vector<int> js;
    for (int j = 1; j <= i; ++j) {
      if (inst.color[j] == inst.color[i] && inst.y[j] <= inst.y[i]) js.push_back(j);
    }
    std::sort(js.begin(), js.end(), [&](int a, int b) { return inst.y[a] < inst.y[b]; });
    for (int j : js) out.emplace_back(i, j);
  }
  return out;
}

namespace {

struct Enumerator {
  const Dataset& ds;
  std::vector<std::uint64_t> conflict;  // bit b set if points conflict
  std::vector<Rational> keep, drop;
  Rational total = 0;

  void run(std::size_t i, std::uint64_t chosen, const Rational& prob) {
    if (sgn(prob) == 0) return;
    if (i == ds.size()) {
      total += prob;
      return;
    }
    run(i + 1, chosen, prob * drop[i]);
    if ((conflict[i] & chosen) == 0) run(i + 1, chosen | (std::uint64_t{1} << i), prob * keep[i]);
  }
};

}  // namespace

Rational gamma_bruteforce(const Dataset& ds, std::size_t cap) {
  validate(ds);
  if (ds.size() > cap || ds.size() > 63) {
    throw CapExceeded("brute force capped at " + std::to_string(std::min<std::size_t>(cap, 63)) +
                      " points, got " + std::to_string(ds.size()));
  }
  Enumerator e{ds, std::vector<std::uint64_t>(ds.size(), 0), {}, {}};
  for (std::size_t a = 0; a < ds.size(); ++a) {
    e.keep.push_back(ds.points[a].prob);
    e.drop.emplace_back(1 - ds.points[a].prob);
    for (std::size_t b = 0; b < ds.size(); ++b) {
      if (a != b && conflicts(ds.points[a], ds.points[b])) e.conflict[a] |= std::uint64_t{1} << b;
    }
  }
  e.run(0, 0, Rational(1));
  return e.total;
}

namespace {

std::uint64_t count_ind(std::uint64_t alive, const std::vector<std::uint64_t>& adj) {
  if (alive == 0) return 1;
  // branch on the live vertex of largest live degree; isolated ones double
  int best = -1, best_deg = -1;
  for (std::uint64_t rest = alive; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest);
    int d = std::popcount(adj[static_cast<std::size_t>(v)] & alive);
    if (d > best_deg) {
      best = v;
      best_deg = d;
    }
  }
  const std::uint64_t bit = std::uint64_t{1} << best;
  if (best_deg == 0) return std::uint64_t{1} << std::popcount(alive);
  return count_ind(alive & ~bit, adj) + count_ind(alive & ~bit & ~adj[static_cast<std::size_t>(best)], adj);
}

}  // namespace

BigInt count_independent_sets(const DominanceGraph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap || n > 62) {
    throw CapExceeded("independent-set count capped at " + std::to_string(std::min<std::size_t>(cap, 62)) +
                      " vertices, got " + std::to_string(n));
  }
  std::vector<std::uint64_t> adj(n, 0);
  for (auto [a, b] : g.edges) {
    adj[a] |= std::uint64_t{1} << b;
    adj[b] |= std::uint64_t{1} << a;
  }
  const std::uint64_t all = n == 0 ? 0 : (n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  std::uint64_t c = count_ind(all, adj);
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(c), 0, 0, &c);
  return out;
}

}  // namespace dominion
