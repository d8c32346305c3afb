#pragma once

#include <cstdint>
#include <string>

#include "dominion/dataset.hpp"

namespace dominion {

enum class ColorMode { Distinct, Bichromatic, KColors };
enum class ProbMode { Fixed, Random, Half };

struct GeneratorSpec {
  std::size_t n = 10;
  int dimension = 2;
  ColorMode colors = ColorMode::Bichromatic;
  int k = 3;  // for KColors
  ProbMode probs = ProbMode::Random;
  Rational fixed_prob{1, 2};
  unsigned long max_denominator = 64;
  long coord_range = 1000000;  // integer coordinates in [0, coord_range)
  std::uint64_t seed = 1;
  bool general_position = false;  // 2D only: no three collinear
};

/// Deterministic in (spec); throws ValidationError "unsatisfiable_spec" when
/// the coordinate range cannot hold the requested points.
Dataset generate(const GeneratorSpec& spec);

ColorMode parse_color_mode(const std::string& s);
ProbMode parse_prob_mode(const std::string& s);

}  // namespace dominion
