#pragma once

// Exact Γ for 2D colored stochastic datasets: subset enumeration, the
// prefix-table DP over legal pairs, and the range-tree sweep.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dominion/dataset.hpp"
#include "dominion/number.hpp"
#include "dominion/range_tree.hpp"
#include "dominion/zero_aware.hpp"

namespace dominion {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The regularized, pruned instance the 2D solvers run on. Index 0 is the
/// dummy point (x 0, y n+1, its own color, probability 1); real points are
/// 1..n in x-order, so x(i) = i.
struct PreparedInstance {
  int n = 0;
  std::vector<int> y;
  std::vector<int> color;
  std::vector<Rational> prob;
  std::vector<int> ids;
  int dummy_color = -1;
};

/// Validates, drops π = 0 points, regularizes. Requires dimension 2.
PreparedInstance prepare_2d(const Dataset& ds);

/// Legal pairs (i, j), i >= j >= 1, grouped by i, each group sorted by
/// increasing y(j). (0,0) is not listed.
std::vector<std::pair<int, int>> legal_pairs(const PreparedInstance& inst);

/// Σ over inter-color-dominance-free subsets of their realization
/// probability. Any dimension.
Rational gamma_bruteforce(const Dataset& ds, std::size_t cap = 20);

/// Independent sets of g, the empty set included.
BigInt count_independent_sets(const DominanceGraph& g, std::size_t cap = 20);

template <class T>
struct FTable {
  std::map<std::pair<int, int>, T> values;  // (i, j) -> F(i, j), (0,0) included
};

template <class T>
struct GammaResult {
  T gamma;
  FTable<T> table;
};

namespace detail {

// Raw (nonzero part, zero multiplicity) pair that, unlike ZeroAwareProduct,
// tolerates a negative multiplicity in intermediate ratios.
template <class T>
struct Zp {
  T v;
  int z = 0;
};

template <class T>
Zp<T> zp_mul(const Zp<T>& a, const Zp<T>& b) {
  return {a.v * b.v, a.z + b.z};
}
template <class T>
Zp<T> zp_div(const Zp<T>& a, const Zp<T>& b) {
  return {a.v / b.v, a.z - b.z};
}
template <class T>
Zp<T> zp_factor(const T& x) {
  return ScalarTraits<T>::is_zero(x) ? Zp<T>{T(1), 1} : Zp<T>{x, 0};
}

template <class T>
std::vector<T> probs_as(const PreparedInstance& inst) {
  std::vector<T> p;
  p.reserve(inst.prob.size());
  for (const auto& q : inst.prob) p.push_back(scalar_from<T>(q));
  return p;
}

}  // namespace detail

/// Direct evaluation of the F(i, j) recurrence with O(1) absence products
/// from prefix tables; O(n^4) worst case.
template <class T>
GammaResult<T> gamma_dp_table(const Dataset& ds) {
  using detail::Zp;
  const PreparedInstance inst = prepare_2d(ds);
  const int n = inst.n;
  const std::vector<T> pi = detail::probs_as<T>(inst);
  std::vector<T> om(pi.size());
  for (std::size_t t = 0; t < pi.size(); ++t) om[t] = T(1) - pi[t];

  std::vector<Zp<T>> G(static_cast<std::size_t>(n) + 1, Zp<T>{T(1), 0});
  for (int t = 1; t <= n; ++t) G[t] = detail::zp_mul(G[t - 1], detail::zp_factor(om[t]));

  // Per color: points in x-order, their y-rank within the color, and the
  // 2D prefix product over (count in x-order, y-rank).
  std::map<int, std::vector<int>> members;
  for (int t = 1; t <= n; ++t) members[inst.color[t]].push_back(t);
  struct ColorTable {
    std::vector<int> xs;  // indices in x-order
    std::vector<int> ys;  // their y values, sorted
    std::vector<std::vector<Zp<T>>> q;
  };
  std::map<int, ColorTable> tables;
  std::vector<int> yrank(static_cast<std::size_t>(n) + 1, 0);
  for (auto& [c, xs] : members) {
    ColorTable tb;
    tb.xs = xs;
    for (int t : xs) tb.ys.push_back(inst.y[t]);
    std::sort(tb.ys.begin(), tb.ys.end());
    const std::size_t nk = xs.size();
    for (int t : xs) {
      yrank[t] = static_cast<int>(std::lower_bound(tb.ys.begin(), tb.ys.end(), inst.y[t]) - tb.ys.begin()) + 1;
    }
    tb.q.assign(nk + 1, std::vector<Zp<T>>(nk + 1, Zp<T>{T(1), 0}));
    for (std::size_t u = 1; u <= nk; ++u) {
      const int t = xs[u - 1];
      for (std::size_t v = 0; v <= nk; ++v) {
        tb.q[u][v] = static_cast<int>(v) >= yrank[t] ? detail::zp_mul(tb.q[u - 1][v], detail::zp_factor(om[t]))
                                                     : tb.q[u - 1][v];
      }
    }
    tables.emplace(c, std::move(tb));
  }

  // Stored F values per column i', sorted by decreasing y(j').
  struct Entry {
    int j;
    T f;
  };
  std::vector<std::vector<Entry>> column(static_cast<std::size_t>(n) + 1);
  column[0].push_back({0, T(1)});

  GammaResult<T> out;
  out.table.values[{0, 0}] = T(1);
  T gamma = G[n].z == 0 ? G[n].v : T(0);

  const auto pairs = legal_pairs(inst);
  std::size_t cursor = 0;
  for (int i = 1; i <= n; ++i) {
    const int k = inst.color[i];
    const ColorTable& tb = tables.at(k);
    auto cnt_x = [&](int a) {
      return static_cast<std::size_t>(std::upper_bound(tb.xs.begin(), tb.xs.end(), a) - tb.xs.begin());
    };
    auto cnt_y = [&](int yv) {
      return static_cast<std::size_t>(std::upper_bound(tb.ys.begin(), tb.ys.end(), yv) - tb.ys.begin());
    };
    const std::size_t u1 = cnt_x(i);
    const Zp<T> tail = detail::zp_div(G[n], G[i]);
    std::vector<Entry> fresh;
    for (; cursor < pairs.size() && pairs[cursor].first == i; ++cursor) {
      const int j = pairs[cursor].second;
      const std::size_t vlo = static_cast<std::size_t>(yrank[j]) - 1;
      T acc(0);
      for (int ip = 0; ip < j; ++ip) {
        if (ip > 0 && inst.color[ip] == k) continue;
        const std::size_t u0 = cnt_x(ip);
        // Gz(i)/Gz(i') * Q(u1, vlo) / Q(u0, vlo): fixed for the column
        Zp<T> c1 = detail::zp_mul(detail::zp_div(G[i], G[ip]), detail::zp_div(tb.q[u1][vlo], tb.q[u0][vlo]));
        for (const Entry& e : column[ip]) {
          const int yj = inst.y[e.j];
          if (yj <= inst.y[i]) break;
          if (ScalarTraits<T>::is_zero(e.f)) continue;
          const std::size_t vv = cnt_y(yj);
          Zp<T> term = detail::zp_mul(c1, detail::zp_div(tb.q[u0][vv], tb.q[u1][vv]));
          if (term.z < 0) throw std::logic_error("gamma_dp: negative zero multiplicity");
          if (term.z > 0) continue;
          acc += e.f * term.v;
        }
      }
      T f = (i == j ? pi[i] : pi[i] * pi[j]) * acc;
      out.table.values[{i, j}] = f;
      if (tail.z == 0 && !ScalarTraits<T>::is_zero(f)) gamma += f * tail.v;
      fresh.push_back({j, f});
    }
    std::sort(fresh.begin(), fresh.end(),
              [&](const Entry& a, const Entry& b) { return inst.y[a.j] > inst.y[b.j]; });
    column[i] = std::move(fresh);
  }
  out.gamma = gamma;
  return out;
}

template <class T>
T gamma_dp(const Dataset& ds) {
  return gamma_dp_table<T>(ds).gamma;
}

namespace detail {

// A multiply issued against a store, kept so it can be undone exactly.
template <class Store>
struct LoggedMultiply {
  Store* store;
  Range2D<int> range;
  enum Kind { Factor, Zero, Unzero } kind;
  typename Store::Scalar factor;
};

template <class T>
struct IntTree : RangeTree2D<T, int> {
  using Scalar = T;
  using RangeTree2D<T, int>::RangeTree2D;
};

template <class Store>
void run_logged(LoggedMultiply<Store>& op) {
  switch (op.kind) {
    case LoggedMultiply<Store>::Factor:
      op.store->multiply(op.range, op.factor);
      break;
    case LoggedMultiply<Store>::Zero:
      op.store->multiply(op.range, typename Store::Scalar(0));
      break;
    case LoggedMultiply<Store>::Unzero:
      op.store->divide_zero(op.range);
      break;
  }
}

template <class Store>
void undo_logged(const LoggedMultiply<Store>& op) {
  switch (op.kind) {
    case LoggedMultiply<Store>::Factor:
      op.store->multiply(op.range, typename Store::Scalar(1) / op.factor);
      break;
    case LoggedMultiply<Store>::Zero:
      op.store->divide_zero(op.range);
      break;
    case LoggedMultiply<Store>::Unzero:
      op.store->multiply(op.range, typename Store::Scalar(0));
      break;
  }
}

}  // namespace detail

/// The range-tree sweep: one global tree over all legal pairs (dummy
/// included) and one tree per color; quadrant multiplies are applied and
/// undone inside each column, strip multiplies persist.
template <class T>
GammaResult<T> gamma_rangetree_table(const Dataset& ds) {
  using Tree = detail::IntTree<T>;
  using Op = detail::LoggedMultiply<Tree>;
  const PreparedInstance inst = prepare_2d(ds);
  const int n = inst.n;
  const std::vector<T> pi = detail::probs_as<T>(inst);
  std::vector<T> om(pi.size());
  for (std::size_t t = 0; t < pi.size(); ++t) om[t] = T(1) - pi[t];

  const auto pairs = legal_pairs(inst);
  std::vector<std::pair<int, int>> all_pts{{0, inst.y[0]}};
  std::map<int, std::vector<std::pair<int, int>>> color_pts;
  std::vector<std::size_t> id_all(pairs.size()), id_color(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    id_all[p] = all_pts.size();
    all_pts.emplace_back(i, inst.y[j]);
    auto& cp = color_pts[inst.color[i]];
    id_color[p] = cp.size();
    cp.emplace_back(i, inst.y[j]);
  }
  Tree rt(all_pts);
  std::map<int, Tree> rtk;
  for (auto& [c, pts] : color_pts) rtk.emplace(c, Tree(pts));

  // Per color, the global prefix product at the last column that color's
  // tree saw; strips of other colors are folded in when it is next used.
  std::vector<ZeroAwareProduct<T>> G(static_cast<std::size_t>(n) + 1);
  for (int t = 1; t <= n; ++t) {
    G[t] = G[t - 1];
    G[t] *= om[t];
  }
  std::map<int, int> synced;

  ZeroAwareProduct<T> prod;
  for (int t = 1; t <= n; ++t) prod *= om[t];
  GammaResult<T> out;
  T gamma = prod.value();
  rt.update(0, T(1));
  out.table.values[{0, 0}] = T(1);

  std::map<int, std::vector<int>> seen;  // color -> earlier indices
  std::size_t cursor = 0;
  for (int i = 1; i <= n; ++i) {
    prod /= om[i];
    const int k = inst.color[i];
    Tree& tk = rtk.at(k);

    auto [it, fresh_color] = synced.try_emplace(k, 0);
    {
      ZeroAwareProduct<T> catchup = G[i - 1] / G[it->second];
      if (!ScalarTraits<T>::is_one(catchup.nonzero_part())) {
        tk.multiply(Range2D<int>::strip_left(i), catchup.nonzero_part());
      }
      for (int z = 0; z < catchup.zero_count(); ++z) tk.multiply(Range2D<int>::strip_left(i), T(0));
    }

    std::vector<Op> log;
    auto issue = [&](Tree& tree, Range2D<int> r, const T& factor, bool inverse) {
      Op op{&tree, std::move(r), Op::Factor, T(1)};
      if (ScalarTraits<T>::is_zero(factor)) {
        op.kind = inverse ? Op::Unzero : Op::Zero;
      } else {
        op.factor = inverse ? T(1) / factor : factor;
      }
      detail::run_logged(op);
      log.push_back(std::move(op));
    };

    auto& earlier = seen[k];
    for (int j : earlier) {
      issue(rt, Range2D<int>::quadrant_nw(j, inst.y[j]), om[j], true);
      issue(tk, Range2D<int>::quadrant_nw(j, inst.y[j]), om[j], true);
    }

    std::vector<std::pair<std::size_t, T>> computed;
    for (; cursor < pairs.size() && pairs[cursor].first == i; ++cursor) {
      const int j = pairs[cursor].second;
      const auto q = Range2D<int>::quadrant_nw(j, inst.y[i]);
      T f = rt.query(q) - tk.query(q);
      f *= (i == j ? pi[i] : pi[i] * pi[j]);
      if (!prod.is_zero()) gamma += f * prod.value();
      out.table.values[{i, j}] = f;
      computed.emplace_back(cursor, f);
      issue(rt, Range2D<int>::quadrant_nw(j, inst.y[j]), om[j], false);
      issue(tk, Range2D<int>::quadrant_nw(j, inst.y[j]), om[j], false);
    }
    for (auto op = log.rbegin(); op != log.rend(); ++op) detail::undo_logged(*op);

    for (auto& [p, f] : computed) {
      rt.update(id_all[p], f);
      tk.update(id_color[p], f);
    }
    if (ScalarTraits<T>::is_zero(om[i])) {
      rt.multiply(Range2D<int>::strip_left(i), T(0));
      tk.multiply(Range2D<int>::strip_left(i), T(0));
    } else {
      rt.multiply(Range2D<int>::strip_left(i), om[i]);
      tk.multiply(Range2D<int>::strip_left(i), om[i]);
    }
    it->second = i;
    earlier.push_back(i);
  }
  out.gamma = gamma;
  return out;
}

template <class T>
T gamma_rangetree(const Dataset& ds) {
  return gamma_rangetree_table<T>(ds).gamma;
}

}  // namespace dominion
