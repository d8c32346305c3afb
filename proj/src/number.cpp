#include "dominion/number.hpp"

#include <cctype>

namespace dominion {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational: '" + std::string(text) + "'");
    }
    BigInt d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    result = Rational(BigInt(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(BigInt(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(body)) {
      throw ParseError("malformed number: '" + std::string(text) + "'");
    }
    result = Rational(BigInt(std::string(body), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational magnitude = abs(value) * scale;
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), magnitude.get_num_mpz_t(),
              magnitude.get_den_mpz_t());
  // round half to even
  BigInt twice = r * 2;
  int cmp_half = cmp(twice, magnitude.get_den());
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  std::string out;
  if (sgn(value) < 0 && q != 0) out.push_back('-');
  out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out.push_back('.');
    out += s.substr(s.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

Rational exact_rational(long double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational form");
  if (v == 0.0L) return 0;
  int e = 0;
  long double m = std::frexp(v, &e);  // |m| in [0.5, 1)
  const bool neg = m < 0;
  if (neg) m = -m;
  // 64 bits cover the x87 mantissa
  const auto bits = static_cast<unsigned long long>(std::ldexp(m, 64));
  Rational r{BigInt(static_cast<unsigned long>(bits))};
  e -= 64;
  if (e > 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return neg ? Rational(-r) : r;
}

}  // namespace dominion
