#include "dominion/trace.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

namespace dominion {

namespace {

std::string lo_text(const Bound<Rational>& b) {
  if (!b.value) return "*";
  return (b.strict ? "(" : "[") + to_string(*b.value);
}

std::string hi_text(const Bound<Rational>& b) {
  if (!b.value) return "*";
  return to_string(*b.value) + (b.strict ? ")" : "]");
}

Bound<Rational> parse_lo(const std::string& s) {
  if (s == "*") return Bound<Rational>::none();
  if (s.size() < 2 || (s.front() != '[' && s.front() != '(')) {
    throw ParseError("bad low bound '" + s + "'");
  }
  return Bound<Rational>{parse_rational(s.substr(1)), s.front() == '('};
}

Bound<Rational> parse_hi(const std::string& s) {
  if (s == "*") return Bound<Rational>::none();
  if (s.size() < 2 || (s.back() != ']' && s.back() != ')')) {
    throw ParseError("bad high bound '" + s + "'");
  }
  return Bound<Rational>{parse_rational(s.substr(0, s.size() - 1)), s.back() == ')'};
}

}  // namespace

std::string format_range(const Range2D<Rational>& r) {
  return lo_text(r.x_lo) + " " + hi_text(r.x_hi) + " " + lo_text(r.y_lo) + " " + hi_text(r.y_hi);
}

Range2D<Rational> parse_range(const std::string& xlo, const std::string& xhi,
                              const std::string& ylo, const std::string& yhi) {
  return Range2D<Rational>{parse_lo(xlo), parse_hi(xhi), parse_lo(ylo), parse_hi(yhi)};
}

void write_trace(std::ostream& out, const Trace& t) {
  out << "B " << t.points.size() << '\n';
  if (t.fault_query) out << "F " << *t.fault_query << '\n';
  for (const auto& [x, y] : t.points) out << "P " << to_string(x) << ' ' << to_string(y) << '\n';
  for (const auto& op : t.ops) {
    switch (op.kind) {
      case OpKind::Query:
        out << "Q " << format_range(op.range) << '\n';
        break;
      case OpKind::Update:
        out << "U " << op.id << ' ' << to_string(op.value) << '\n';
        break;
      case OpKind::Multiply:
        out << "M " << format_range(op.range) << ' ' << to_string(op.value) << '\n';
        break;
      case OpKind::DivideZero:
        out << "D " << format_range(op.range) << '\n';
        break;
    }
  }
}

std::string write_trace(const Trace& t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  std::size_t lineno = 0;
  std::size_t expected_points = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + why);
    };
    auto next = [&]() {
      std::string tok;
      if (!(ls >> tok)) fail("missing field");
      return tok;
    };
    try {
      if (tag == "B") {
        if (have_header) fail("second B line");
        expected_points = std::stoul(next());
        have_header = true;
      } else if (tag == "F") {
        t.fault_query = std::stoul(next());
      } else if (tag == "P") {
        if (!have_header || t.points.size() >= expected_points) fail("unexpected P line");
        auto x = parse_rational(next());
        auto y = parse_rational(next());
        t.points.emplace_back(x, y);
      } else {
        if (!have_header || t.points.size() != expected_points) fail("operation before all points");
        TraceOp op;
        if (tag == "Q" || tag == "M" || tag == "D") {
          auto a = next(), b = next(), c = next(), d = next();
          op.range = parse_range(a, b, c, d);
          op.kind = tag == "Q" ? OpKind::Query : tag == "M" ? OpKind::Multiply : OpKind::DivideZero;
          if (tag == "M") op.value = parse_rational(next());
        } else if (tag == "U") {
          op.kind = OpKind::Update;
          op.id = std::stoul(next());
          op.value = parse_rational(next());
          if (op.id >= expected_points) fail("update of unknown point " + std::to_string(op.id));
        } else {
          fail("unknown op '" + tag + "'");
        }
        t.ops.push_back(std::move(op));
      }
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).starts_with("trace line")) throw;
      fail(e.what());
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!have_header) throw ParseError("trace: missing B line");
  if (t.points.size() != expected_points) throw ParseError("trace: fewer P lines than declared");
  return t;
}

namespace {

class TraceGen {
 public:
  explicit TraceGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Coordinates on a coarse grid of halves so ties and boundary hits are common.
  Rational coord() { return make_rational(uniform(0, 40), 2); }

  Bound<Rational> lo_bound() {
    if (coin(0.2)) return Bound<Rational>::none();
    return Bound<Rational>{coord(), coin(0.5)};
  }
  Bound<Rational> hi_bound() {
    if (coin(0.2)) return Bound<Rational>::none();
    return Bound<Rational>{coord(), coin(0.5)};
  }

  Range2D<Rational> range(const std::vector<std::pair<Rational, Rational>>& pts) {
    int shape = uniform(0, 3);
    const auto& anchor = pts[static_cast<std::size_t>(uniform(0, static_cast<int>(pts.size()) - 1))];
    switch (shape) {
      case 0:
        return Range2D<Rational>::quadrant_nw(anchor.first, anchor.second);
      case 1:
        return Range2D<Rational>::strip_left(anchor.first);
      case 2:
        return Range2D<Rational>::all();
      default:
        return Range2D<Rational>{lo_bound(), hi_bound(), lo_bound(), hi_bound()};
    }
  }

  Rational factor() {
    static const long nums[] = {2, 1, 3, 1, -1, -2, 1, -3};
    static const unsigned long dens[] = {1, 2, 1, 3, 1, 3, 1, 2};
    int k = uniform(0, 7);
    return make_rational(nums[k], dens[k]);
  }

  Rational weight() { return make_rational(uniform(-9, 9), static_cast<unsigned long>(uniform(1, 6))); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Trace random_trace(const TraceSpec& spec) {
  TraceGen g(spec.seed);
  Trace t;
  const std::size_t m = std::max<std::size_t>(spec.points, 1);
  for (std::size_t i = 0; i < m; ++i) t.points.emplace_back(g.coord(), g.coord());

  // Shadow store decides which divide_zero calls are legal, and a stack of
  // recent multiplies feeds exact reverts.
  NaiveStore<Rational> shadow(t.points);
  std::vector<std::pair<Range2D<Rational>, Rational>> recent;
  while (t.ops.size() < spec.ops) {
    TraceOp op;
    int roll = g.uniform(0, 99);
    if (roll < 35) {
      op.kind = OpKind::Query;
      op.range = g.range(t.points);
    } else if (roll < 50) {
      op.kind = OpKind::Update;
      op.id = static_cast<std::size_t>(g.uniform(0, static_cast<int>(m) - 1));
      op.value = g.coin(0.1) ? Rational(0) : g.weight();
      shadow.update(op.id, op.value);
    } else if (roll < 72) {
      op.kind = OpKind::Multiply;
      op.range = g.range(t.points);
      op.value = g.coin(0.15) ? Rational(0) : g.factor();
      shadow.multiply(op.range, op.value);
      recent.emplace_back(op.range, op.value);
    } else if (roll < 90) {
      if (recent.empty()) continue;
      auto [r, delta] = recent.back();
      recent.pop_back();
      op.range = r;
      if (sgn(delta) == 0) {
        op.kind = OpKind::DivideZero;
        try {
          shadow.divide_zero(r);
        } catch (const ZeroCounterUnderflow&) {
          // an update in between reset a covered point; emit it anyway,
          // the replay expects both structures to refuse
        }
      } else {
        op.kind = OpKind::Multiply;
        op.value = 1 / delta;
        shadow.multiply(r, op.value);
      }
    } else {
      op.kind = OpKind::DivideZero;
      op.range = g.range(t.points);
      try {
        shadow.divide_zero(op.range);
      } catch (const ZeroCounterUnderflow&) {
      }
    }
    t.ops.push_back(std::move(op));
  }
  return t;
}

ReplayReport replay(const Trace& t, std::optional<std::size_t> fault_query) {
  RangeTree2D<Rational> tree(t.points);
  NaiveStore<Rational> naive(t.points);
  ReplayReport rep;
  if (!fault_query) fault_query = t.fault_query;
  for (std::size_t k = 0; k < t.ops.size(); ++k) {
    const auto& op = t.ops[k];
    ++rep.ops;
    switch (op.kind) {
      case OpKind::Query: {
        Rational got = tree.query(op.range);
        if (fault_query && *fault_query == rep.queries) got += 1;
        Rational want = naive.query(op.range);
        ++rep.queries;
        if (got != want) {
          rep.mismatch = k;
          rep.detail = "op " + std::to_string(k) + ": Q " + format_range(op.range) + " tree=" +
                       to_string(got) + " naive=" + to_string(want);
          return rep;
        }
        break;
      }
      case OpKind::Update:
        tree.update(op.id, op.value);
        naive.update(op.id, op.value);
        break;
      case OpKind::Multiply:
        tree.multiply(op.range, op.value);
        naive.multiply(op.range, op.value);
        break;
      case OpKind::DivideZero: {
        bool tree_refused = false, naive_refused = false;
        try {
          tree.divide_zero(op.range);
        } catch (const ZeroCounterUnderflow&) {
          tree_refused = true;
        }
        try {
          naive.divide_zero(op.range);
        } catch (const ZeroCounterUnderflow&) {
          naive_refused = true;
        }
        if (tree_refused != naive_refused) {
          rep.mismatch = k;
          rep.detail = "op " + std::to_string(k) + ": D " + format_range(op.range) +
                       (tree_refused ? " refused by tree only" : " refused by naive only");
          return rep;
        }
        break;
      }
    }
  }
  return rep;
}

}  // namespace dominion
