#include "dominion/dataset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dominion {

void validate(const Dataset& ds) {
  if (ds.dimension < 1) {
    throw ValidationError("bad_dimension", "dimension must be at least 1");
  }
  std::set<int> ids;
  for (const auto& p : ds.points) {
    if (static_cast<int>(p.coords.size()) != ds.dimension) {
      throw ValidationError("dimension_mismatch", "point " + std::to_string(p.id) + " has " +
                                                      std::to_string(p.coords.size()) +
                                                      " coordinates, expected " +
                                                      std::to_string(ds.dimension));
    }
    if (p.prob < 0 || p.prob > 1) {
      throw ValidationError("bad_probability", "point " + std::to_string(p.id) +
                                                   " has probability " + to_string(p.prob) +
                                                   " outside [0,1]");
    }
    if (p.color < 0) {
      throw ValidationError("bad_color", "point " + std::to_string(p.id) + " has a negative color");
    }
    if (p.id < 1) {
      throw ValidationError("bad_id", "point ids must be positive, got " + std::to_string(p.id));
    }
    if (!ids.insert(p.id).second) {
      throw ValidationError("duplicate_id", "id " + std::to_string(p.id) + " appears twice");
    }
  }
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ds.points[a].coords < ds.points[b].coords;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& a = ds.points[order[k - 1]];
    const auto& b = ds.points[order[k]];
    if (a.coords == b.coords) {
      throw ValidationError("duplicate_point", "points " + std::to_string(a.id) + " and " +
                                                   std::to_string(b.id) +
                                                   " have identical coordinates");
    }
  }
}

Dataset prune_impossible(const Dataset& ds) {
  Dataset out;
  out.dimension = ds.dimension;
  for (const auto& p : ds.points) {
    if (sgn(p.prob) != 0) out.points.push_back(p);
  }
  return out;
}

bool dominates(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) throw std::invalid_argument("dominates: dimension mismatch");
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < q[k]) return false;
  }
  return true;
}

bool conflicts(const StochasticPoint& a, const StochasticPoint& b) {
  if (a.color == b.color) return false;
  return dominates(a.coords, b.coords) || dominates(b.coords, a.coords);
}

bool has_intercolor_dominance(const Dataset& ds, std::span<const std::size_t> subset) {
  for (std::size_t s = 0; s < subset.size(); ++s) {
    for (std::size_t t = s + 1; t < subset.size(); ++t) {
      if (conflicts(ds.points[subset[s]], ds.points[subset[t]])) return true;
    }
  }
  return false;
}

bool has_intercolor_dominance(const Dataset& ds) {
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return has_intercolor_dominance(ds, all);
}

Rational realization_probability(const Dataset& ds, std::span<const std::size_t> subset) {
  std::vector<char> present(ds.size(), 0);
  for (auto idx : subset) present.at(idx) = 1;
  Rational prob = 1;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    prob *= present[k] ? ds.points[k].prob : Rational(1 - ds.points[k].prob);
  }
  return prob;
}

RegularizedDataset regularize(const Dataset& ds) {
  validate(ds);
  const std::size_t n = ds.size();
  const int d = ds.dimension;
  std::vector<Rational> coord_sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    coord_sum[i] = 0;
    for (const auto& c : ds.points[i].coords) coord_sum[i] += c;
  }

  RegularizedDataset out;
  out.dimension = d;
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ds.points[i];
    out.points[i] = RegularPoint{p.id, std::vector<int>(static_cast<std::size_t>(d)), p.color,
                                 p.prob, i};
  }
  std::vector<std::size_t> order(n);
  for (int axis = 0; axis < d; ++axis) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ca = ds.points[a].coords[static_cast<std::size_t>(axis)];
      const auto& cb = ds.points[b].coords[static_cast<std::size_t>(axis)];
      if (ca != cb) return ca < cb;
      if (coord_sum[a] != coord_sum[b]) return coord_sum[a] < coord_sum[b];
      return a < b;
    });
    for (std::size_t rank = 0; rank < n; ++rank) {
      out.points[order[rank]].coords[static_cast<std::size_t>(axis)] = static_cast<int>(rank) + 1;
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const RegularPoint& a, const RegularPoint& b) { return a.coords[0] < b.coords[0]; });
  return out;
}

Dataset to_dataset(const RegularizedDataset& rd) {
  Dataset ds;
  ds.dimension = rd.dimension;
  for (const auto& p : rd.points) {
    StochasticPoint sp{p.id, {}, p.color, p.prob};
    for (int c : p.coords) sp.coords.emplace_back(c);
    ds.points.push_back(std::move(sp));
  }
  return ds;
}

DominanceGraph build_dominance_graph(const Dataset& ds) {
  DominanceGraph g;
  for (const auto& p : ds.points) g.ids.push_back(p.id);
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      if (conflicts(ds.points[a], ds.points[b])) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

std::vector<std::pair<int, int>> edges_by_id(const DominanceGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : g.edges) {
    int u = g.ids[a], v = g.ids[b];
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t z_prefix_length(std::span<const int> colors_in_x_order) {
  std::size_t len = colors_in_x_order.size();
  if (len == 0) return 0;
  const int last = colors_in_x_order.back();
  while (len > 0 && colors_in_x_order[len - 1] == last) --len;
  return len;
}

}  // namespace dominion
