#include "stp/continued_fraction.hpp"

#include "stp/errors.hpp"

#include <cmath>
#include <gmp.h>

namespace stp {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_fdiv_q(out.backend().data(), a.backend().data(), b.backend().data());
  return out;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// floor((p + sqrt(d)) / q) for irrational sqrt(d).
BigInt floor_surd(const BigInt& p, const BigInt& d, const BigInt& q) {
  BigInt s = isqrt(d);
  if (q > 0) return floor_div(p + s, q);
  // (p + sqrt d)/q = -(p + sqrt d)/|q|; floor(-z) = -floor(z) - 1 for irrational z.
  return -floor_div(p + s, abs_big(q)) - 1;
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(BigInt p, BigInt d, BigInt q)
    : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)) {
  if (q_ == 0) throw DomainError("quadratic irrational with zero denominator");
  if (d_ <= 0 || is_perfect_square(d_)) throw DomainError("quadratic irrational needs a positive non-square radicand");
  BigInt rem = (d_ - p_ * p_) % q_;
  if (rem != 0) {
    BigInt aq = abs_big(q_);
    p_ *= aq;
    d_ *= q_ * q_;
    q_ *= aq;
  }
}

QuadraticIrrational QuadraticIrrational::golden() { return {BigInt(-1), BigInt(5), BigInt(2)}; }

BigInt QuadraticIrrational::floor() const { return floor_surd(p_, d_, q_); }

FixedPoint QuadraticIrrational::to_fixed(std::size_t bits) const {
  // floor(2^B (p + sqrt d)/q) = floor((p 2^B + sqrt(d 4^B)) / q).
  BigInt scale = BigInt(1) << bits;
  BigInt m = floor_surd(p_ * scale, d_ * scale * scale, q_);
  return FixedPoint::from_units(m, bits);
}

double QuadraticIrrational::to_double() const {
  return (p_.convert_to<double>() + std::sqrt(d_.convert_to<double>())) / q_.convert_to<double>();
}

std::vector<BigInt> QuadraticIrrational::partial_quotients(std::size_t terms) const {
  std::vector<BigInt> out;
  out.reserve(terms);
  BigInt p = p_, q = q_;
  for (std::size_t i = 0; i < terms; ++i) {
    BigInt a = floor_surd(p, d_, q);
    out.push_back(a);
    // x = (p + sqrt d)/q -> 1/(x - a) = (p' + sqrt d)/q'
    BigInt p_next = a * q - p;
    BigInt q_next = (d_ - p_next * p_next) / q;
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return out;
}

std::string QuadraticIrrational::str() const {
  return "(" + p_.str() + " + sqrt(" + d_.str() + "))/" + q_.str();
}

std::vector<BigInt> partial_quotients(const Rational& x) {
  std::vector<BigInt> out;
  BigInt p = num(x), q = den(x);
  while (q != 0) {
    BigInt a = floor_div(p, q);
    out.push_back(a);
    BigInt r = p - a * q;
    p = std::move(q);
    q = std::move(r);
  }
  return out;
}

std::vector<BigInt> convergent_denominators(const std::vector<BigInt>& a) {
  std::vector<BigInt> out;
  out.reserve(a.size());
  BigInt prev = 1, cur = 0;  // q_{-2}, q_{-1}
  for (const auto& ak : a) {
    BigInt next = ak * cur + prev;
    prev = std::move(cur);
    cur = next;
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace stp
