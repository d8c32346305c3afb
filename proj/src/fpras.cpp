#include "dominion/fpras.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dominion {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t level, std::uint64_t sample)
    : key_(mix64(mix64(mix64(seed) ^ level) ^ sample)) {}

std::uint64_t CounterRng::next() { return mix64(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }

bool CounterRng::bit() {
  if (left_ == 0) {
    buffer_ = next();
    left_ = 64;
  }
  --left_;
  bool b = buffer_ & 1;
  buffer_ >>= 1;
  return b;
}

namespace {

// p/q with both below 2^62 so doubling never overflows.
struct SmallFraction {
  std::uint64_t p = 0, q = 1;
};

std::optional<SmallFraction> small_fraction(const Rational& r) {
  const auto& num = r.get_num();
  const auto& den = r.get_den();
  if (mpz_sizeinbase(den.get_mpz_t(), 2) > 61) return std::nullopt;
  return SmallFraction{num.get_ui(), den.get_ui()};
}

bool bernoulli_small(CounterRng& rng, SmallFraction f) {
  if (f.p == 0) return false;
  if (f.p >= f.q) return true;
  std::uint64_t r = f.p;
  for (;;) {
    r <<= 1;
    bool pbit = r >= f.q;
    if (pbit) r -= f.q;
    bool ubit = rng.bit();
    if (ubit != pbit) return pbit;  // U < p iff U has the 0 where p has the 1
    if (r == 0) return false;       // U equals p so far, p terminates: U >= p
  }
}

}  // namespace

bool CounterRng::bernoulli(const Rational& p) {
  if (sgn(p) <= 0) return false;
  if (p >= 1) return true;
  if (auto f = small_fraction(p)) return bernoulli_small(*this, *f);
  BigInt r = p.get_num();
  const BigInt& q = p.get_den();
  for (;;) {
    r *= 2;
    bool pbit = r >= q;
    if (pbit) r -= q;
    if (bit() != pbit) return pbit;
    if (r == 0) return false;
  }
}

std::uint64_t default_samples(std::size_t n, const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0,1)");
  BigInt n5 = 1;
  for (int k = 0; k < 5; ++k) n5 *= static_cast<unsigned long>(n);
  Rational v = Rational(n5 * 10) / (epsilon * epsilon);
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  if (!c.fits_ulong_p()) throw std::overflow_error("default sample count does not fit in 64 bits");
  return std::max<std::uint64_t>(1, c.get_ui());
}

Dataset sort_by_probability(const Dataset& ds) {
  Dataset out = ds;
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const StochasticPoint& a, const StochasticPoint& b) { return a.prob > b.prob; });
  return out;
}

Rational pr_event(const Dataset& sorted, std::size_t i, std::size_t j) {
  const std::size_t n = sorted.size();
  if (i < 1 || i >= j || j > n) {
    throw std::invalid_argument("pr_event needs 1 <= i < j <= n, got i=" + std::to_string(i) +
                                " j=" + std::to_string(j));
  }
  Rational v = sorted.points[i - 1].prob * sorted.points[j - 1].prob;
  for (std::size_t t = i + 1; t <= n; ++t) {
    if (t != j) v *= 1 - sorted.points[t - 1].prob;
  }
  return v;
}

Rational pr_at_most_one(const Dataset& ds) {
  Rational none = 1;
  for (const auto& p : ds.points) none *= 1 - p.prob;
  Rational total = none;
  for (std::size_t a = 0; a < ds.size(); ++a) {
    Rational only = ds.points[a].prob;
    for (std::size_t b = 0; b < ds.size(); ++b) {
      if (b != a) only *= 1 - ds.points[b].prob;
    }
    total += only;
  }
  return total;
}

namespace {

using Row = std::vector<std::uint64_t>;

struct ConflictMatrix {
  std::size_t words = 0;
  std::vector<Row> rows;

  explicit ConflictMatrix(const Dataset& ds) : words((ds.size() + 63) / 64), rows(ds.size(), Row(words, 0)) {
    for (std::size_t a = 0; a < ds.size(); ++a) {
      for (std::size_t b = a + 1; b < ds.size(); ++b) {
        if (conflicts(ds.points[a], ds.points[b])) {
          rows[a][b / 64] |= 1ULL << (b % 64);
          rows[b][a / 64] |= 1ULL << (a % 64);
        }
      }
    }
  }

  bool hits(std::size_t t, const Row& set) const {
    for (std::size_t w = 0; w < words; ++w) {
      if (rows[t][w] & set[w]) return true;
    }
    return false;
  }
};

void set_bit(Row& r, std::size_t t) { r[t / 64] |= 1ULL << (t % 64); }

}  // namespace

Rational cond_exact(const Dataset& sorted, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j || j > sorted.size()) throw std::invalid_argument("cond_exact: bad indices");
  if (i - 1 > 62) throw std::invalid_argument("cond_exact: prefix too long to enumerate");
  const ConflictMatrix cm(sorted);
  const std::size_t pre = i - 1;
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << pre); ++mask) {
    Row set(cm.words, 0);
    Rational pr = 1;
    for (std::size_t t = 0; t < pre; ++t) {
      if (mask >> t & 1) {
        set_bit(set, t);
        pr *= sorted.points[t].prob;
      } else {
        pr *= 1 - sorted.points[t].prob;
      }
    }
    if (sgn(pr) == 0) continue;
    set_bit(set, i - 1);
    set_bit(set, j - 1);
    bool fired = false;
    for (std::size_t t = 0; t < sorted.size() && !fired; ++t) {
      if ((set[t / 64] >> (t % 64) & 1) && cm.hits(t, set)) fired = true;
    }
    if (fired) total += pr;
  }
  return total;
}

FprasResult estimate_lambda(const Dataset& ds, const FprasConfig& cfg) {
  validate(ds);
  const Dataset sorted = sort_by_probability(ds);
  const std::size_t n = sorted.size();
  FprasResult res;
  res.epsilon = cfg.epsilon;
  res.seed = cfg.seed;
  res.samples = cfg.samples ? *cfg.samples : default_samples(n, cfg.epsilon);
  if (res.samples == 0) throw std::invalid_argument("sample count must be at least 1");
  res.lambda = 0;

  const ConflictMatrix cm(sorted);
  std::vector<std::optional<SmallFraction>> small(n);
  for (std::size_t t = 0; t < n; ++t) small[t] = small_fraction(sorted.points[t].prob);

  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::uint64_t> hits(n + 1, 0);
    const std::size_t pre = i - 1;
    Row set(cm.words);
    for (std::uint64_t k = 0; k < res.samples; ++k) {
      CounterRng rng(cfg.seed, i, k);
      std::fill(set.begin(), set.end(), 0);
      for (std::size_t t = 0; t < pre; ++t) {
        bool present = small[t] ? bernoulli_small(rng, *small[t]) : rng.bernoulli(sorted.points[t].prob);
        if (present) set_bit(set, t);
      }
      set_bit(set, i - 1);
      bool base = false;
      for (std::size_t t = 0; t < i && !base; ++t) {
        if ((set[t / 64] >> (t % 64) & 1) && cm.hits(t, set)) base = true;
      }
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (base || cm.hits(j - 1, set)) ++hits[j];
      }
    }
    for (std::size_t j = i + 1; j <= n; ++j) {
      EventTerm term{i, j, pr_event(sorted, i, j), hits[j]};
      if (term.hits != 0 && sgn(term.pr) != 0) {
        Rational est(BigInt(static_cast<unsigned long>(term.hits)), BigInt(static_cast<unsigned long>(res.samples)));
        est.canonicalize();
        res.lambda += term.pr * est;
      }
      res.terms.push_back(std::move(term));
    }
  }
  return res;
}

Rational lambda_by_decomposition(const Dataset& ds, std::size_t cap) {
  validate(ds);
  if (ds.size() > cap || ds.size() > 63) throw std::invalid_argument("lambda_by_decomposition: too many points");
  const Dataset sorted = sort_by_probability(ds);
  Rational lambda = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j <= sorted.size(); ++j) {
      Rational pr = pr_event(sorted, i, j);
      if (sgn(pr) != 0) lambda += pr * cond_exact(sorted, i, j);
    }
  }
  return lambda;
}

}  // namespace dominion
