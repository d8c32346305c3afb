#pragma once

// Colored stochastic datasets and the combinatorial helpers shared by the
// solvers: dominance, regularization, the dominance graph, Z(A).

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dominion/number.hpp"

namespace dominion {

/// Input rejected before solving. `code` is a stable machine-readable tag
/// ("duplicate_point", "collinear", "bad_probability", ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct StochasticPoint {
  int id = 0;
  std::vector<Rational> coords;
  int color = 0;
  Rational prob;
};

struct Dataset {
  int dimension = 2;
  std::vector<StochasticPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Throws ValidationError on: dimension < 1, coordinate count mismatch,
/// probability outside [0,1], negative color, non-positive or repeated id,
/// repeated coordinate vector.
void validate(const Dataset& ds);

/// Drops points with existence probability 0; they never occur in a
/// realization, so every probability computed here is unchanged.
Dataset prune_impossible(const Dataset& ds);

/// Componentwise p >= q. Throws std::invalid_argument on a dimension mismatch.
bool dominates(std::span<const Rational> p, std::span<const Rational> q);

/// True iff the two points have different colors and one dominates the other.
bool conflicts(const StochasticPoint& a, const StochasticPoint& b);

bool has_intercolor_dominance(const Dataset& ds, std::span<const std::size_t> subset);
bool has_intercolor_dominance(const Dataset& ds);

/// prod_{a in subset} pi(a) * prod_{a not in subset} (1 - pi(a)).
Rational realization_probability(const Dataset& ds, std::span<const std::size_t> subset);

/// A point of a regular set: every axis holds the ranks 1..n exactly once.
struct RegularPoint {
  int id = 0;
  std::vector<int> coords;
  int color = 0;
  Rational prob;
  std::size_t source = 0;  ///< index in the dataset it was built from
};

/// Points sorted by strictly increasing first coordinate, so in 2D the
/// storage index equals the x-order.
struct RegularizedDataset {
  int dimension = 2;
  std::vector<RegularPoint> points;

  std::size_t size() const { return points.size(); }
  int x(std::size_t i) const { return points[i].coords[0]; }
  int y(std::size_t i) const { return points[i].coords[1]; }
};

/// Per axis, rank points by (coordinate, coordinate sum, input index).
/// Dominance between any two points is preserved exactly.
RegularizedDataset regularize(const Dataset& ds);

Dataset to_dataset(const RegularizedDataset& rd);

/// Undirected graph on dataset indices with an edge per inter-color
/// dominance pair.
struct DominanceGraph {
  std::vector<int> ids;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // first < second

  std::size_t vertex_count() const { return ids.size(); }
};

DominanceGraph build_dominance_graph(const Dataset& ds);

/// Edge sets compared under the id labelling.
std::vector<std::pair<int, int>> edges_by_id(const DominanceGraph& g);

/// Length of Z(A) for a subset listed in increasing x: 0 if monochromatic,
/// otherwise everything before the trailing run of the last color.
std::size_t z_prefix_length(std::span<const int> colors_in_x_order);

}  // namespace dominion
