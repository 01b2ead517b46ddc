#include "stp/radius.hpp"

#include "stp/errors.hpp"

#include <cmath>

namespace stp {

SqrtRational SqrtRational::of(const Rational& r) {
  if (r < 0) throw DomainError("radius must be non-negative");
  SqrtRational out;
  out.square_ = r * r;
  return out;
}

SqrtRational SqrtRational::sqrt(const Rational& s) {
  if (s < 0) throw DomainError("radicand must be non-negative");
  SqrtRational out;
  out.square_ = s;
  return out;
}

std::optional<Rational> SqrtRational::rational() const {
  if (!is_rational_square(square_)) return std::nullopt;
  return Rational(isqrt(num(square_)), isqrt(den(square_)));
}

double SqrtRational::to_double() const {
  if (auto r = rational()) return stp::to_double(*r);
  return std::sqrt(stp::to_double(square_));
}

Rational SqrtRational::lower(unsigned bits) const {
  Rational scaled = square_ * pow2(2 * static_cast<int>(bits));
  return Rational(isqrt(floor(scaled))) * pow2(-static_cast<int>(bits));
}

Rational SqrtRational::upper(unsigned bits) const {
  Rational scaled = square_ * pow2(2 * static_cast<int>(bits));
  return Rational(isqrt_ceil(ceil(scaled))) * pow2(-static_cast<int>(bits));
}

SqrtRational SqrtRational::operator/(const SqrtRational& o) const {
  if (o.is_zero()) throw DomainError("division by a zero radius");
  return sqrt(square_ / o.square_);
}

SqrtRational SqrtRational::scaled(const Rational& c) const {
  if (c < 0) throw DomainError("scale must be non-negative");
  return sqrt(square_ * c * c);
}

SqrtRational SqrtRational::pow(unsigned e) const { return sqrt(stp::pow(square_, e)); }

std::string SqrtRational::str() const {
  if (auto r = rational()) return to_string(*r);
  return "sqrt(" + to_string(square_) + ")";
}

SqrtRational SqrtRational::parse(const std::string& text) {
  if (text.rfind("sqrt(", 0) == 0 && text.size() > 6 && text.back() == ')')
    return sqrt(parse_rational(text.substr(5, text.size() - 6)));
  return of(parse_rational(text));
}

RadiusProfile RadiusProfile::power(Rational coefficient, Rational exponent) {
  if (coefficient < 0) throw DomainError("profile coefficient must be non-negative");
  if (exponent < 0 || den(2 * exponent) != 1) throw DomainError("profile exponent must be a non-negative multiple of 1/2");
  RadiusProfile p;
  p.kind_ = Kind::Power;
  p.coefficient_ = std::move(coefficient);
  p.exponent_ = std::move(exponent);
  return p;
}

RadiusProfile RadiusProfile::table(std::vector<SqrtRational> values, BigInt first) {
  if (first < 1) throw DomainError("table must start at q >= 1");
  RadiusProfile p;
  p.kind_ = Kind::Table;
  p.values_ = std::move(values);
  p.first_ = std::move(first);
  return p;
}

SqrtRational RadiusProfile::operator()(const BigInt& q) const {
  if (q < 1) throw DomainError("profile is defined for q >= 1");
  if (kind_ == Kind::Power) {
    unsigned m = (2 * exponent_).convert_to<unsigned>();
    return SqrtRational::sqrt(coefficient_ * coefficient_ / stp::pow(Rational(q), m));
  }
  if (q < first_ || q - first_ >= values_.size()) return {};
  return values_[(q - first_).convert_to<std::size_t>()];
}

bool RadiusProfile::weakly_decreasing_from(const BigInt& from) const {
  if (kind_ == Kind::Power) return true;
  std::size_t i = 0;
  if (from < first_) {
    for (const auto& v : values_)
      if (!v.is_zero()) return false;
    return true;
  }
  if (from - first_ < values_.size()) i = (from - first_).convert_to<std::size_t>();
  else return true;
  for (; i + 1 < values_.size(); ++i)
    if (values_[i + 1] > values_[i]) return false;
  return true;
}

std::size_t PolynomialSpec::degree(std::size_t j) const {
  const auto& c = coefficients.at(j);
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return i;
  return 0;
}

BigInt PolynomialSpec::eval(std::size_t j, const BigInt& q) const {
  const auto& c = coefficients.at(j);
  BigInt acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * q + c[i];
  return acc;
}

std::vector<BigInt> PolynomialSpec::point(const BigInt& q) const {
  std::vector<BigInt> out;
  out.reserve(dim());
  for (std::size_t j = 0; j < dim(); ++j) out.push_back(eval(j, q));
  return out;
}

namespace {

// Coefficients of P(q + 1) - P(q), lowest degree first.
std::vector<BigInt> forward_difference(const std::vector<BigInt>& c) {
  std::vector<BigInt> out(c.size(), BigInt(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    // (q + 1)^i - q^i = sum_{m < i} binom(i, m) q^m
    BigInt binom = 1;
    for (std::size_t m = 0; m < i; ++m) {
      out[m] += c[i] * binom;
      binom = binom * (i - m) / (m + 1);
    }
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

constexpr long long kCertifyScanCap = 10000000;

}  // namespace

void PolynomialSpec::validate() const {
  if (coefficients.empty()) throw DomainError("polynomial curve needs at least one coordinate");
  if (start < 1) throw DomainError("curve start N0 must be >= 1");
  for (std::size_t j = 0; j < dim(); ++j) {
    std::size_t d = degree(j);
    const std::string name = "P_" + std::to_string(j + 1);
    if (d == 0) throw DomainError(name + " is constant");
    if (coefficients[j][d] <= 0) throw DomainError(name + " needs a positive leading coefficient");
    if (eval(j, start) < 1) throw DomainError(name + "(N0) must be >= 1");
    auto diff = forward_difference(coefficients[j]);
    if (diff.size() == 1) continue;  // linear: constant positive difference
    // Cauchy bound: every real root of the difference lies below 1 + max |d_i / d_top|.
    Rational worst = 0;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i)
      worst = std::max(worst, Rational(abs(diff[i]), diff.back()));
    BigInt bound = ceil(worst) + 1;
    if (bound - start > kCertifyScanCap) throw DomainError("cannot certify injectivity of " + name + " within the scan cap");
    for (BigInt q = start; q <= bound; ++q) {
      BigInt v = 0;
      for (std::size_t i = diff.size(); i-- > 0;) v = v * q + diff[i];
      if (v <= 0) throw DomainError(name + " is not increasing at q = " + q.str());
    }
  }
}

std::optional<BigInt> PolynomialSpec::solve(std::size_t j, const BigInt& value) const {
  BigInt lo = start;
  if (eval(j, lo) > value) return std::nullopt;
  BigInt step = 1;
  BigInt hi = lo + step;
  while (eval(j, hi) < value) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  // eval(lo) <= value <= eval(hi) once the loop settles; bisect the increasing map.
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (eval(j, mid) <= value)
      lo = mid;
    else
      hi = mid;
  }
  if (eval(j, lo) == value) return lo;
  if (eval(j, hi) == value) return hi;
  return std::nullopt;
}

}  // namespace stp
