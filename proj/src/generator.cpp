#include "dominion/generator.hpp"

#include <cmath>
#include <random>
#include <set>

namespace dominion {

namespace {

[[noreturn]] void unsatisfiable(const std::string& why) { throw ValidationError("unsatisfiable_spec", why); }

bool collinear_with_any(const std::vector<std::vector<long>>& pts, const std::vector<long>& c) {
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      __int128 o = static_cast<__int128>(pts[b][0] - pts[a][0]) * (c[1] - pts[a][1]) -
                   static_cast<__int128>(pts[b][1] - pts[a][1]) * (c[0] - pts[a][0]);
      if (o == 0) return true;
    }
  }
  return false;
}

}  // namespace

ColorMode parse_color_mode(const std::string& s) {
  if (s == "distinct") return ColorMode::Distinct;
  if (s == "bichromatic") return ColorMode::Bichromatic;
  if (s == "k-colors" || s == "k") return ColorMode::KColors;
  throw ValidationError("bad_argument", "unknown color mode '" + s + "'");
}

ProbMode parse_prob_mode(const std::string& s) {
  if (s == "fixed") return ProbMode::Fixed;
  if (s == "random") return ProbMode::Random;
  if (s == "half") return ProbMode::Half;
  throw ValidationError("bad_argument", "unknown probability mode '" + s + "'");
}

Dataset generate(const GeneratorSpec& spec) {
  if (spec.dimension < 1) unsatisfiable("dimension must be at least 1");
  if (spec.coord_range < 1) unsatisfiable("coordinate range must be positive");
  if (spec.colors == ColorMode::KColors && spec.k < 1) unsatisfiable("k must be at least 1");
  if (spec.probs == ProbMode::Fixed && (spec.fixed_prob < 0 || spec.fixed_prob > 1)) {
    unsatisfiable("fixed probability outside [0,1]");
  }
  if (spec.max_denominator < 1) unsatisfiable("denominator bound must be positive");
  if (spec.general_position && spec.dimension != 2) unsatisfiable("general position is only defined in 2D");
  const double cells = std::pow(static_cast<double>(spec.coord_range), spec.dimension);
  if (cells < static_cast<double>(spec.n)) {
    unsatisfiable("coordinate range holds fewer than " + std::to_string(spec.n) + " distinct points");
  }

  std::mt19937_64 rng(spec.seed);
  auto below = [&](std::uint64_t m) { return rng() % m; };
  const auto range = static_cast<std::uint64_t>(spec.coord_range);

  std::vector<std::vector<long>> coords;
  std::set<std::vector<long>> seen;
  std::size_t attempts = 0;
  const std::size_t budget = 1000 + 200 * spec.n;
  while (coords.size() < spec.n) {
    if (++attempts > budget) {
      unsatisfiable("gave up after " + std::to_string(budget) + " draws; widen the coordinate range");
    }
    std::vector<long> c(static_cast<std::size_t>(spec.dimension));
    for (auto& v : c) v = static_cast<long>(below(range));
    if (seen.count(c)) continue;
    if (spec.general_position && collinear_with_any(coords, c)) continue;
    seen.insert(c);
    coords.push_back(std::move(c));
  }

  Dataset ds;
  ds.dimension = spec.dimension;
  for (std::size_t i = 0; i < spec.n; ++i) {
    StochasticPoint p;
    p.id = static_cast<int>(i) + 1;
    for (long v : coords[i]) p.coords.emplace_back(v);
    switch (spec.colors) {
      case ColorMode::Distinct:
        p.color = static_cast<int>(i);
        break;
      case ColorMode::Bichromatic:
        p.color = static_cast<int>(below(2));
        break;
      case ColorMode::KColors:
        p.color = static_cast<int>(below(static_cast<std::uint64_t>(spec.k)));
        break;
    }
    switch (spec.probs) {
      case ProbMode::Fixed:
        p.prob = spec.fixed_prob;
        break;
      case ProbMode::Half:
        p.prob = Rational(1, 2);
        break;
      case ProbMode::Random: {
        const unsigned long q = 1 + static_cast<unsigned long>(below(spec.max_denominator));
        p.prob = make_rational(static_cast<long>(below(q + 1)), q);
        break;
      }
    }
    ds.points.push_back(std::move(p));
  }
  validate(ds);
  return ds;
}

}  // namespace dominion
