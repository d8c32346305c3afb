#pragma once

// Operation traces for the range tree: text format, random generation and
// differential replay against NaiveStore.
//
//   B n                 n points follow
//   P x y
//   Q <range>
//   U id w
//   M <range> delta
//   D <range>           divide_zero
//   F k                 harness self-test: perturb the answer to query k
//
// <range> is four tokens "xlo xhi ylo yhi": '*' for unbounded, otherwise
// "[v" / "(v" for a low side and "v]" / "v)" for a high side.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dominion/number.hpp"
#include "dominion/range_tree.hpp"

namespace dominion {

enum class OpKind { Query, Update, Multiply, DivideZero };

struct TraceOp {
  OpKind kind = OpKind::Query;
  Range2D<Rational> range;
  std::size_t id = 0;
  Rational value;  // w for Update, delta for Multiply
};

struct Trace {
  std::vector<std::pair<Rational, Rational>> points;
  std::vector<TraceOp> ops;
  std::optional<std::size_t> fault_query;
};

std::string format_range(const Range2D<Rational>& r);
Range2D<Rational> parse_range(const std::string& xlo, const std::string& xhi,
                              const std::string& ylo, const std::string& yhi);

void write_trace(std::ostream& out, const Trace& t);
std::string write_trace(const Trace& t);
/// Throws ParseError with a line number on malformed input.
Trace read_trace(std::istream& in);

struct TraceSpec {
  std::size_t points = 64;
  std::size_t ops = 1000;
  std::uint64_t seed = 1;
};

Trace random_trace(const TraceSpec& spec);

struct ReplayReport {
  std::size_t ops = 0;
  std::size_t queries = 0;
  std::optional<std::size_t> mismatch;  // index into ops
  std::string detail;
};

/// Runs the trace on RangeTree2D and NaiveStore side by side. A divide_zero
/// must be rejected by both or by neither. `fault_query` (or the trace's own
/// F line) perturbs the tree's answer to that query, counted among queries.
ReplayReport replay(const Trace& t, std::optional<std::size_t> fault_query = std::nullopt);

}  // namespace dominion
