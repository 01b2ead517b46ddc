#include "stp/denjoy.hpp"

#include "stp/errors.hpp"

#include <algorithm>

namespace stp {

Rational golden_convergent(const BigInt& min_den) {
  BigInt a = 1, b = 1;
  while (b <= min_den) {
    BigInt next = a + b;
    a = b;
    b = next;
  }
  return Rational(a, b);
}

DenjoyMap::DenjoyMap(DenjoyParams params) : params_(std::move(params)) {
  const long n = static_cast<long>(params_.n_max);
  kept_ = 0;
  for (long j = -n; j <= n; ++j) {
    Rational len = gap_length(j);
    kept_ += len;
    gaps_.push_back(Gap{orbit_point(BigInt(j)), j, len, 0});
  }
  std::sort(gaps_.begin(), gaps_.end(), [](const Gap& a, const Gap& b) { return a.point < b.point; });
  prefix_.assign(gaps_.size() + 1, 0);
  by_index_.assign(gaps_.size(), 0);
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + gaps_[i].length;
    gaps_[i].start = (1 - kept_) * gaps_[i].point + prefix_[i];
    by_index_[static_cast<std::size_t>(gaps_[i].index + n)] = i;
  }
}

std::shared_ptr<const DenjoyMap> DenjoyMap::build(const DenjoyParams& p) {
  if (p.lambda <= 0 || p.lambda >= 1) throw DomainError("lambda must lie in (0, 1)");
  if (p.c <= 0) throw DomainError("c must be positive");
  if (p.theta <= 0 || p.theta >= 1) throw DomainError("theta must lie in (0, 1)");
  if (den(p.theta) <= 1000000)
    throw DomainError("theta " + to_string(p.theta) + " is not irrational to working precision (denominator <= 10^6)");
  if (p.n_max == 0 || p.n_max > 100000) throw DomainError("n_max must be in [1, 100000]");
  if (p.tol <= 0) throw DomainError("tolerance must be positive");
  Rational total = p.c * (1 + 2 * p.lambda / (1 - p.lambda));
  if (total >= 1) throw DomainError("gap lengths sum to " + to_string(total) + ", which must stay below 1");
  std::shared_ptr<const DenjoyMap> out(new DenjoyMap(p));
  Rational tail = out->tail_bound();
  if (tail > p.tol) throw ToleranceExceeded("truncated gaps exceed the tolerance", to_double(tail));
  return out;
}

Rational DenjoyMap::total_gap_length() const {
  return params_.c * (1 + 2 * params_.lambda / (1 - params_.lambda));
}

Rational DenjoyMap::tail_bound() const { return total_gap_length() - kept_; }

Rational DenjoyMap::gap_length(long j) const {
  return params_.c * pow(params_.lambda, static_cast<unsigned>(j < 0 ? -j : j));
}

Rational DenjoyMap::orbit_point(const BigInt& j) const { return frac(Rational(j) * params_.theta); }

Rational DenjoyMap::gap_start(long j) const {
  long n = static_cast<long>(params_.n_max);
  if (j < -n || j > n) throw DomainError("gap index outside the truncated orbit");
  return gaps_[by_index_[static_cast<std::size_t>(j + n)]].start;
}

std::size_t DenjoyMap::locate(const Rational& x) const {
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), x, [](const Rational& v, const Gap& g) { return v < g.start; });
  if (it == gaps_.begin()) return gaps_.size();
  return static_cast<std::size_t>(it - gaps_.begin()) - 1;
}

std::optional<long> DenjoyMap::gap_index(const Rational& x0) const {
  Rational x = frac(x0);
  std::size_t pos = locate(x);
  if (pos < gaps_.size() && x <= gaps_[pos].start + gaps_[pos].length) return gaps_[pos].index;
  return std::nullopt;
}

Rational DenjoyMap::embed(const Rational& y0) const {
  Rational y = frac(y0);
  auto it = std::lower_bound(gaps_.begin(), gaps_.end(), y, [](const Gap& g, const Rational& v) { return g.point < v; });
  return (1 - kept_) * y + prefix_[static_cast<std::size_t>(it - gaps_.begin())];
}

Rational DenjoyMap::collapse(const Rational& x0) const {
  Rational x = frac(x0);
  std::size_t pos = locate(x);
  if (pos == gaps_.size()) return x / (1 - kept_);
  const Gap& g = gaps_[pos];
  if (x <= g.start + g.length) return g.point;
  return (x - prefix_[pos + 1]) / (1 - kept_);
}

Rational DenjoyMap::cdf(const Rational& x) const {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return collapse(x);
}

Rational DenjoyMap::power(const Rational& x0, const BigInt& n) const {
  Rational x = frac(x0);
  std::size_t pos = locate(x);
  if (pos < gaps_.size() && x <= gaps_[pos].start + gaps_[pos].length) {
    const Gap& g = gaps_[pos];
    BigInt target = BigInt(g.index) + n;
    const BigInt bound = params_.n_max;
    if (target >= -bound && target <= bound) {
      long m = target.convert_to<long>();
      const Gap& to = gaps_[by_index_[static_cast<std::size_t>(m + static_cast<long>(params_.n_max))]];
      return to.start + (x - g.start) * to.length / g.length;
    }
    return embed(orbit_point(target));
  }
  return embed(collapse(x) + Rational(n) * params_.theta);
}

}  // namespace stp
