#include "dominion/bench.hpp"

#include <cmath>
#include <stdexcept>

#include "dominion/generator.hpp"

namespace dominion {

Dataset bench_instance(std::size_t n, std::uint64_t seed, bool general_position) {
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.colors = ColorMode::Bichromatic;
  spec.probs = ProbMode::Random;
  spec.general_position = general_position;
  return generate(spec);
}

double loglog_slope(std::span<const double> n, std::span<const double> t) {
  if (n.size() != t.size() || n.size() < 2) throw std::invalid_argument("slope needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    double x = std::log(n[i]), y = std::log(std::max(t[i], 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace dominion
