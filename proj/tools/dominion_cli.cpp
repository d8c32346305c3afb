#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "dominion/bench.hpp"
#include "dominion/csd_exact.hpp"
#include "dominion/fbcsd.hpp"
#include "dominion/fpras.hpp"
#include "dominion/generator.hpp"
#include "dominion/io.hpp"
#include "dominion/trace.hpp"

using namespace dominion;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kMismatch = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum class Backend { Rational, Float };

Backend resolve_backend(const std::string& flag, Backend fallback) {
  std::string v = flag;
  if (v.empty()) {
    if (const char* env = std::getenv("DOMINION_BACKEND")) v = env;
  }
  if (v.empty()) return fallback;
  if (v == "rational") return Backend::Rational;
  if (v == "float") return Backend::Float;
  throw ValidationError("bad_argument", "backend must be 'rational' or 'float', got '" + v + "'");
}

const char* backend_name(Backend b) { return b == Backend::Rational ? "rational" : "float"; }

Rational parse_arg_rational(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const ParseError& e) {
    throw ValidationError("bad_argument", std::string(what) + ": " + e.what());
  }
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string input;
  std::string method = "exact";
  std::string backend;
  std::string epsilon = "1/4";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  std::size_t cap = 0;
  int precision = 12;
  bool timing = false;
  std::string dump_table;
};

template <class T>
void dump_table(const std::string& path, const FTable<T>& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [key, f] : table.values) {
    json row{{"i", key.first}, {"j", key.second}};
    if constexpr (std::is_same_v<T, Rational>) {
      row["F"] = to_string(f);
    } else {
      row["F"] = to_decimal(exact_rational(f), 18);
    }
    out << row.dump() << '\n';
  }
}

int cmd_solve(const SolveOptions& o) {
  const Dataset ds = load_dataset(o.input);
  validate(ds);
  const Backend backend = resolve_backend(o.backend, Backend::Rational);
  const bool float_capable = o.method == "exact" || o.method == "dp" || o.method == "fbcsd";
  const Backend used = float_capable ? backend : Backend::Rational;

  json res{{"method", o.method}, {"backend", backend_name(used)}, {"n", ds.size()},
           {"dimension", ds.dimension}, {"digest", dataset_digest(ds)}};
  json config = json::object();

  const auto t0 = Clock::now();
  std::optional<Rational> gamma, lambda;
  std::optional<Float> gamma_f;
  bool exact = true;
  if (o.method == "exact" || o.method == "dp") {
    const bool rt = o.method == "exact";
    if (used == Backend::Rational) {
      auto r = rt ? gamma_rangetree_table<Rational>(ds) : gamma_dp_table<Rational>(ds);
      gamma = r.gamma;
      if (!o.dump_table.empty()) dump_table(o.dump_table, r.table);
    } else {
      auto r = rt ? gamma_rangetree_table<Float>(ds) : gamma_dp_table<Float>(ds);
      gamma_f = r.gamma;
      if (!o.dump_table.empty()) dump_table(o.dump_table, r.table);
    }
  } else if (o.method == "brute") {
    gamma = gamma_bruteforce(ds, o.cap ? o.cap : 20);
  } else if (o.method == "approx") {
    FprasConfig cfg;
    cfg.epsilon = parse_arg_rational(o.epsilon, "--epsilon");
    if (sgn(cfg.epsilon) <= 0 || cfg.epsilon >= 1) throw ValidationError("bad_argument", "--epsilon must lie in (0,1)");
    cfg.seed = o.seed;
    cfg.samples = o.samples;
    auto r = estimate_lambda(ds, cfg);
    lambda = r.lambda;
    gamma = 1 - r.lambda;
    exact = false;
    config = json{{"epsilon", to_string(r.epsilon)}, {"seed", r.seed}, {"samples", r.samples}};
  } else if (o.method == "fbcsd") {
    if (used == Backend::Rational) {
      lambda = lambda_star(ds);
      gamma = 1 - *lambda;
    } else {
      gamma_f = Float(1) - lambda_star_as<Float>(ds);
    }
  } else if (o.method == "fbcsd-brute") {
    lambda = lambda_star_bruteforce(ds, o.cap ? o.cap : 12);
    gamma = 1 - *lambda;
  } else {
    throw ValidationError("bad_argument", "unknown method '" + o.method + "'");
  }
  const double elapsed = seconds_since(t0);

  if (gamma_f) {
    exact = false;
    const Rational g = exact_rational(*gamma_f);
    const Rational l = exact_rational(Float(1) - *gamma_f);
    res["gamma"] = to_decimal(g, o.precision);
    res["gamma_decimal"] = to_decimal(g, o.precision);
    res["lambda"] = to_decimal(l, o.precision);
    res["lambda_decimal"] = to_decimal(l, o.precision);
  } else {
    if (!lambda) lambda = 1 - *gamma;
    res["gamma"] = to_string(*gamma);
    res["gamma_decimal"] = to_decimal(*gamma, o.precision);
    res["lambda"] = to_string(*lambda);
    res["lambda_decimal"] = to_decimal(*lambda, o.precision);
  }
  res["exact"] = exact;
  if (!config.empty()) res["config"] = config;
  if (o.timing) res["seconds"] = elapsed;
  std::cout << res.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  GeneratorSpec spec;
  std::string colors = "bichromatic";
  std::string probs = "random";
  std::string prob = "1/2";
  std::string output;
};

int cmd_generate(GenerateOptions o) {
  o.spec.colors = parse_color_mode(o.colors);
  o.spec.probs = parse_prob_mode(o.probs);
  o.spec.fixed_prob = parse_arg_rational(o.prob, "--prob");
  const Dataset ds = generate(o.spec);
  if (o.output.empty()) {
    std::cout << emit_dataset(ds);
  } else {
    save_dataset(o.output, ds);
  }
  return kOk;
}

// ---------------------------------------------------------------- selftest

struct SelftestOptions {
  std::uint64_t seed = 1;
  int cases = 100;
  int max_n = 10;
  std::size_t fuzz_ops = 20000;
  bool inject_fault = false;
  std::string reproducer_dir = ".";
};

struct Tally {
  std::string name;
  int cases = 0;
  int mismatches = 0;
};

int cmd_selftest(const SelftestOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Tally> tallies;
  std::vector<std::string> reproducers;
  const fs::path dir = o.reproducer_dir;
  fs::create_directories(dir);

  auto random_small = [&](bool general_position, int max_n, ProbMode probs) {
    GeneratorSpec spec;
    spec.n = 1 + rng() % static_cast<std::uint64_t>(max_n);
    spec.colors = ColorMode::KColors;
    spec.k = 1 + static_cast<int>(rng() % 3);
    spec.probs = probs;
    spec.coord_range = general_position ? 40 : 16;
    spec.general_position = general_position;
    spec.seed = rng();
    return generate(spec);
  };
  auto save_case = [&](const std::string& stem, const Dataset& ds) {
    fs::path p = dir / (stem + ".json");
    save_dataset(p, ds);
    reproducers.push_back(p.string());
    std::cout << "mismatch, dataset saved to " << p.string() << '\n';
  };

  Tally csd{"csd brute/dp/rangetree"};
  for (int c = 0; c < o.cases; ++c, ++csd.cases) {
    Dataset ds = random_small(false, o.max_n, ProbMode::Random);
    Rational b = gamma_bruteforce(ds), d = gamma_dp<Rational>(ds), r = gamma_rangetree<Rational>(ds);
    if (b != d || b != r) {
      ++csd.mismatches;
      save_case("selftest-csd-" + std::to_string(o.seed) + "-" + std::to_string(c), ds);
    }
  }
  tallies.push_back(csd);

  Tally half{"independent-set identity"};
  for (int c = 0; c < o.cases; ++c, ++half.cases) {
    Dataset ds = random_small(false, o.max_n, ProbMode::Half);
    Rational scaled = gamma_rangetree<Rational>(ds);
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), ds.size());
    if (scaled.get_den() != 1 || scaled.get_num() != count_independent_sets(build_dominance_graph(ds))) {
      ++half.mismatches;
      save_case("selftest-half-" + std::to_string(o.seed) + "-" + std::to_string(c), ds);
    }
  }
  tallies.push_back(half);

  Tally fb{"fbcsd exact/brute"};
  for (int c = 0; c < std::max(1, o.cases / 4); ++c, ++fb.cases) {
    Dataset ds = random_small(true, std::min(o.max_n, 7), ProbMode::Random);
    if (lambda_star(ds) != lambda_star_bruteforce(ds)) {
      ++fb.mismatches;
      save_case("selftest-fbcsd-" + std::to_string(o.seed) + "-" + std::to_string(c), ds);
    }
  }
  tallies.push_back(fb);

  Tally fuzz{"range-tree fuzz"};
  {
    TraceSpec spec;
    spec.points = 48;
    spec.ops = o.fuzz_ops;
    spec.seed = o.seed;
    Trace t = random_trace(spec);
    if (o.inject_fault) t.fault_query = 0;
    auto rep = replay(t);
    fuzz.cases = static_cast<int>(rep.ops);
    if (rep.mismatch) {
      ++fuzz.mismatches;
      fs::path p = dir / ("selftest-fuzz-" + std::to_string(o.seed) + ".trace");
      std::ofstream out(p);
      write_trace(out, t);
      reproducers.push_back(p.string());
      std::cout << rep.detail << "\nreproducer: " << p.string() << '\n';
    }
  }
  tallies.push_back(fuzz);

  int total = 0;
  for (const auto& t : tallies) {
    std::cout << t.name << ": " << t.cases << " cases, " << t.mismatches << " mismatches\n";
    total += t.mismatches;
  }
  std::cout << "selftest: " << total << " mismatches\n";
  return total == 0 ? kOk : kMismatch;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string method = "exact";
  std::vector<std::size_t> sizes;
  std::string backend;
  std::uint64_t seed = 1;
  int reps = 1;
  std::string output;
};

std::vector<std::size_t> default_sizes(const std::string& method) {
  if (method == "exact") return {250, 500, 1000, 2000};
  if (method == "dp") return {30, 60, 120};
  if (method == "brute") return {10, 11, 12, 13, 14, 15, 16};
  if (method == "fbcsd") return {10, 20, 40};
  throw ValidationError("bad_argument", "bench supports exact, dp, brute and fbcsd");
}

template <class T>
double time_method(const std::string& method, const Dataset& ds) {
  const auto t0 = Clock::now();
  if (method == "exact") {
    (void)gamma_rangetree<T>(ds);
  } else if (method == "dp") {
    (void)gamma_dp<T>(ds);
  } else if (method == "brute") {
    (void)gamma_bruteforce(ds, 30);
  } else {
    (void)lambda_star_as<T>(ds);
  }
  return seconds_since(t0);
}

int cmd_bench(BenchOptions o) {
  const Backend backend = resolve_backend(o.backend, Backend::Float);
  if (o.sizes.empty()) o.sizes = default_sizes(o.method);
  else (void)default_sizes(o.method);
  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::runtime_error("cannot write " + o.output);
  }
  std::ostream& out = o.output.empty() ? std::cout : file;
  const char* bname = o.method == "brute" ? "rational" : backend_name(backend);
  out << "n,method,backend,seconds\n";
  std::vector<double> ns, ts;
  for (std::size_t n : o.sizes) {
    const Dataset ds = bench_instance(n, o.seed + n, o.method == "fbcsd");
    double best = 1e300;
    for (int r = 0; r < std::max(1, o.reps); ++r) {
      double t = backend == Backend::Float ? time_method<Float>(o.method, ds) : time_method<Rational>(o.method, ds);
      best = std::min(best, t);
    }
    out << n << ',' << o.method << ',' << bname << ',' << best << '\n';
    out.flush();
    ns.push_back(static_cast<double>(n));
    ts.push_back(best);
  }
  if (ns.size() >= 2) {
    out << "# loglog_slope," << o.method << ',' << loglog_slope(ns, ts) << '\n';
    if (o.method == "brute") {
      // exponential methods: time ratio per added point
      double r = std::exp((std::log(ts.back()) - std::log(ts.front())) / (ns.back() - ns.front()));
      out << "# growth_per_point," << o.method << ',' << r << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- replay-trace

int cmd_replay(const std::string& input, std::optional<std::size_t> fault) {
  std::ifstream in(input);
  if (!in) throw ValidationError("io_error", "cannot read " + input);
  Trace t = read_trace(in);
  auto rep = replay(t, fault);
  if (rep.mismatch) {
    std::cout << "mismatch: " << rep.detail << '\n';
    return kMismatch;
  }
  std::cout << "replayed " << rep.ops << " ops (" << rep.queries << " queries): no mismatch\n";
  return kOk;
}

void print_error(const std::string& code, const std::string& message, json extra = json::object()) {
  json err{{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cout << json{{"error", err}}.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colored stochastic dominance solvers"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto add_solve_flags = [&](CLI::App* sub, bool with_method) {
    sub->add_option("--input,-i", solve.input, "dataset JSON")->required();
    if (with_method) {
      sub->add_option("--method,-m", solve.method, "exact|dp|brute|approx|fbcsd|fbcsd-brute");
    }
    sub->add_option("--backend", solve.backend, "rational|float (default: $DOMINION_BACKEND or rational)");
    sub->add_option("--epsilon", solve.epsilon, "approx: relative error target");
    sub->add_option("--seed", solve.seed, "approx: sampler seed");
    sub->add_option("--samples", solve.samples, "approx: samples per level");
    sub->add_option("--cap", solve.cap, "brute: maximum number of points");
    sub->add_option("--precision", solve.precision, "decimal digits")->check(CLI::Range(0, 200));
    sub->add_flag("--timing", solve.timing, "add wall time to the output");
    sub->add_option("--dump-table", solve.dump_table, "exact/dp: write the F table as JSON lines");
  };
  auto* s_solve = app.add_subcommand("solve", "compute Gamma and Lambda");
  add_solve_flags(s_solve, true);
  auto* s_approx = app.add_subcommand("approx", "solve --method approx");
  add_solve_flags(s_approx, false);
  auto* s_fbcsd = app.add_subcommand("fbcsd", "basis-free variant; --method exact|brute");
  std::string fb_method = "exact";
  s_fbcsd->add_option("--input,-i", solve.input, "dataset JSON")->required();
  s_fbcsd->add_option("--method,-m", fb_method, "exact|brute");
  s_fbcsd->add_option("--backend", solve.backend, "rational|float");
  s_fbcsd->add_option("--precision", solve.precision, "decimal digits");
  s_fbcsd->add_flag("--timing", solve.timing, "add wall time to the output");

  GenerateOptions gen;
  auto* s_gen = app.add_subcommand("generate", "write a random dataset");
  s_gen->add_option("--n,-n", gen.spec.n, "number of points");
  s_gen->add_option("--dimension,-d", gen.spec.dimension, "dimension");
  s_gen->add_option("--colors", gen.colors, "distinct|bichromatic|k-colors");
  s_gen->add_option("--k", gen.spec.k, "number of colors for k-colors");
  s_gen->add_option("--probs", gen.probs, "fixed|random|half");
  s_gen->add_option("--prob", gen.prob, "probability for --probs fixed");
  s_gen->add_option("--max-den", gen.spec.max_denominator, "denominator bound for --probs random");
  s_gen->add_option("--coord-range", gen.spec.coord_range, "integer coordinates in [0, R)");
  s_gen->add_option("--seed", gen.spec.seed, "seed");
  s_gen->add_flag("--general-position", gen.spec.general_position, "no three collinear (2D)");
  s_gen->add_option("--output,-o", gen.output, "file (default stdout)");

  SelftestOptions st;
  auto* s_self = app.add_subcommand("selftest", "cross-check all methods on random instances");
  s_self->add_option("--seed", st.seed, "seed");
  s_self->add_option("--cases", st.cases, "instances per suite");
  s_self->add_option("--max-n", st.max_n, "largest instance");
  s_self->add_option("--fuzz-ops", st.fuzz_ops, "range-tree fuzz length");
  s_self->add_flag("--inject-fault", st.inject_fault, "corrupt one fuzz query to test the harness");
  s_self->add_option("--reproducer-dir", st.reproducer_dir, "where failing cases are written");

  BenchOptions bench;
  auto* s_bench = app.add_subcommand("bench", "time a method over sizes, CSV out");
  s_bench->add_option("--method,-m", bench.method, "exact|dp|brute|fbcsd");
  s_bench->add_option("--sizes", bench.sizes, "comma separated sizes")->delimiter(',');
  s_bench->add_option("--backend", bench.backend, "float|rational (default: $DOMINION_BACKEND or float)");
  s_bench->add_option("--seed", bench.seed, "seed");
  s_bench->add_option("--reps", bench.reps, "repetitions, best time kept");
  s_bench->add_option("--output,-o", bench.output, "CSV file (default stdout)");

  std::string trace_in;
  std::optional<std::size_t> trace_fault;
  auto* s_replay = app.add_subcommand("replay-trace", "replay a range-tree trace against the naive store");
  s_replay->add_option("--input,-i", trace_in, "trace file")->required();
  s_replay->add_option("--inject-fault", trace_fault, "perturb the answer to this query");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*s_solve) return cmd_solve(solve);
    if (*s_approx) {
      solve.method = "approx";
      return cmd_solve(solve);
    }
    if (*s_fbcsd) {
      if (fb_method != "exact" && fb_method != "brute") {
        throw ValidationError("bad_argument", "fbcsd --method must be exact or brute");
      }
      solve.method = fb_method == "exact" ? "fbcsd" : "fbcsd-brute";
      return cmd_solve(solve);
    }
    if (*s_gen) return cmd_generate(gen);
    if (*s_self) return cmd_selftest(st);
    if (*s_bench) return cmd_bench(bench);
    if (*s_replay) return cmd_replay(trace_in, trace_fault);
  } catch (const CollinearError& e) {
    print_error(e.code(), e.what(), json{{"triple", e.ids()}});
    return kValidation;
  } catch (const ValidationError& e) {
    print_error(e.code(), e.what());
    return kValidation;
  } catch (const ParseError& e) {
    print_error("parse_error", e.what());
    return kValidation;
  } catch (const CapExceeded& e) {
    print_error("cap_exceeded", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return kOk;
}
