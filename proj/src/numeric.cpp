#include "stp/numeric.hpp"

#include "stp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <gmp.h>

namespace stp {

BigInt floor(const Rational& q) {
  BigInt n = num(q);
  BigInt d = den(q);
  BigInt out;
  mpz_fdiv_q(out.backend().data(), n.backend().data(), d.backend().data());
  return out;
}

BigInt ceil(const Rational& q) {
  BigInt n = num(q);
  BigInt d = den(q);
  BigInt out;
  mpz_cdiv_q(out.backend().data(), n.backend().data(), d.backend().data());
  return out;
}

Rational frac(const Rational& q) {
  if (q >= 0 && q < 1) return q;
  return q - Rational(floor(q));
}

Rational pow2(int e) {
  BigInt one = 1;
  if (e >= 0) return Rational(one << e);
  return Rational(BigInt(1), one << (-e));
}

Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  Rational b = base;
  while (e != 0) {
    if (e & 1u) out *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return out;
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.backend().data(), 2);
}

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw DomainError("isqrt of a negative integer");
  BigInt out;
  mpz_sqrt(out.backend().data(), x.backend().data());
  return out;
}

BigInt isqrt_ceil(const BigInt& x) {
  BigInt r = isqrt(x);
  if (r * r < x) ++r;
  return r;
}

bool is_perfect_square(const BigInt& x) {
  return x >= 0 && mpz_perfect_square_p(x.backend().data()) != 0;
}

bool is_rational_square(const Rational& q) {
  return q >= 0 && is_perfect_square(num(q)) && is_perfect_square(den(q));
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo < 0 || hi < lo) throw DomainError("simplest_between needs 0 <= lo <= hi");
  BigInt fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (fl < floor(hi)) return Rational(fl + 1);
  // Both endpoints share the integer part: recurse on the reciprocals of the fractional parts.
  Rational a = lo - Rational(fl);
  Rational b = hi - Rational(fl);
  return Rational(fl) + 1 / simplest_between(1 / b, 1 / a);
}

Rational sum_exact(std::vector<Rational> terms) {
  if (terms.empty()) return 0;
  while (terms.size() > 1) {
    std::size_t half = (terms.size() + 1) / 2;
    for (std::size_t i = 0; i < terms.size() / 2; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (terms.size() % 2 == 1) terms[half - 1] = std::move(terms.back());
    terms.resize(half);
  }
  return terms.front();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const BigInt& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

std::string to_string(const BigInt& x) { return x.str(); }

namespace {

// Decimal only; the string constructor would treat a leading zero as octal.
BigInt parse_integer(std::string t) {
  bool neg = !t.empty() && t[0] == '-';
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.erase(0, 1);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(t);
  t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
  BigInt v(t);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw DomainError("cannot parse rational from '" + s + "'"); };
  if (s.empty()) return fail();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt p = parse_integer(s.substr(0, slash));
      BigInt q = parse_integer(s.substr(slash + 1));
      if (q == 0) return fail();
      return Rational(p, q);
    }
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.erase(0, 1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mant) {
      if (c == '.') {
        if (seen_dot) return fail();
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_dot) ++frac_digits;
      } else {
        return fail();
      }
    }
    if (digits.empty()) return fail();
    Rational v{parse_integer(digits)};
    long shift = exp10 - frac_digits;
    BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    v = shift < 0 ? v / Rational(ten_pow) : v * Rational(ten_pow);
    return neg ? -v : v;
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    return fail();
  }
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite double has no rational value");
  int exp = 0;
  double m = std::frexp(x, &exp);
  // m * 2^53 is an exact integer.
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  return Rational(BigInt(mant)) * pow2(exp - 53);
}

}  // namespace stp
