#include "stp/experiments.hpp"

#include "stp/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace stp {

std::string to_string(UnionRoute r) { return r == UnionRoute::Lebesgue ? "lebesgue" : "cdf"; }

std::string to_string(OracleComponent c) {
  switch (c) {
    case OracleComponent::HitCount: return "hit_count";
    case OracleComponent::UnionMeasure: return "union_measure";
    case OracleComponent::TSequence: return "t_sequence";
    case OracleComponent::CountingProfile: return "counting_profile";
  }
  return "unknown";
}

namespace {

using Limb = FixedPoint::Limb;

void check_shapes(std::size_t dim, const std::vector<Rational>& x, const RadiusSequence& r) {
  if (x.size() != dim || r.dim() != dim) throw DomainError("system, target and radius sequence dimensions differ");
}

/// dist < radius, with radii of 1/2 or more covering everything but the antipode.
bool within(const Rational& d, const SqrtRational& radius) {
  if (radius.square() >= Rational(1, 4)) return d < Rational(1, 2);
  return d * d < radius.square();
}

Divergence lebesgue_divergence(const std::vector<Rational>& x, const RadiusSequence& r) {
  std::vector<CircleMeasure> leb(x.size(), CircleMeasure::lebesgue());
  return partial_measure_sum(leb, x, r, 1, BigInt(0)).divergence;
}

/// Lebesgue Psi at each horizon (sorted ascending).
std::vector<MeasureSum> lebesgue_psi(const std::vector<Rational>& x, const RadiusSequence& r,
                                     const std::vector<std::uint64_t>& horizons) {
  std::vector<MeasureSum> out;
  out.reserve(horizons.size());
  MeasureSumBuilder builder(lebesgue_divergence(x, r));
  const CircleMeasure leb = CircleMeasure::lebesgue();
  r.for_each_support(BigInt(horizons.back()), [&](const SupportEntry& e) {
    while (out.size() < horizons.size() && e.ordinal > horizons[out.size()]) out.push_back(builder.snapshot());
    SqrtRational psi = SqrtRational::of(1);
    for (std::size_t j = 0; j < x.size(); ++j) psi = psi * ball_mass(leb, x[j], e.radius);
    builder.add(psi, 1);
    return true;
  });
  while (out.size() < horizons.size()) out.push_back(builder.snapshot());
  return out;
}

bool dyadic_at(const Rational& v, std::size_t bits) {
  const BigInt d = den(v);
  return (d & (d - 1)) == 0 && bit_length(d) <= bits + 1;
}

/// Hit counting along a polynomial curve with B-bit fixed-point alpha.
/// P_j(q) alpha_j is advanced by finite differences, so each step is a few limb additions.
class CurveKernel {
 public:
  CurveKernel(const RadiusSequence::CurveView& view, const std::vector<Rational>& x, std::uint64_t h,
              std::size_t bits, std::size_t output_bits)
      : bits_(bits), limbs_(bits / 64), dim_(view.spec.dim()), h_(h) {
    if (view.spec.start > BigInt(h)) {
      empty_ = true;
      return;
    }
    start_ = view.spec.start.convert_to<std::uint64_t>();
    for (std::size_t j = 0; j < dim_; ++j) FixedPoint::check_budget(view.spec.eval(j, BigInt(h)), bits, output_bits);

    diffs_.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const std::size_t d = view.spec.degree(j);
      std::vector<BigInt> v(d + 1);
      for (std::size_t m = 0; m <= d; ++m) v[m] = view.spec.eval(j, BigInt(start_ + m));
      // Forward differences Delta^i P_j at start.
      for (std::size_t i = 0; i <= d; ++i) {
        diffs_[j].push_back(v[0]);
        for (std::size_t m = 0; m + 1 < v.size(); ++m) v[m] = v[m + 1] - v[m];
        v.pop_back();
      }
    }

    x_.resize(dim_ * limbs_);
    for (std::size_t j = 0; j < dim_; ++j) {
      FixedPoint fx = FixedPoint::from_rational(x[j], bits);
      std::copy(fx.limbs().begin(), fx.limbs().end(), x_.begin() + j * limbs_);
    }

    const Rational scale2 = view.scale * view.scale;
    const Rational full = pow2(static_cast<int>(2 * bits));
    thresholds_.resize((h - start_ + 1) * limbs_);
    for (std::uint64_t q = start_; q <= h; ++q) {
      const Rational s = view.profile(BigInt(q)).square() * scale2;
      BigInt t;
      if (s >= Rational(1, 4)) t = BigInt(1) << (bits - 1);
      else if (s > 0) t = isqrt_ceil(ceil(s * full));
      FixedPoint ft = FixedPoint::from_units(t, bits);
      std::copy(ft.limbs().begin(), ft.limbs().end(), thresholds_.begin() + (q - start_) * limbs_);
    }
  }

  /// Counts at each checkpoint (sorted ascending, all <= h).
  std::vector<std::uint64_t> run(const TorusPoint& alpha, const std::vector<std::uint64_t>& checkpoints,
                                 std::vector<BigInt>* log) const {
    std::vector<std::uint64_t> out;
    out.reserve(checkpoints.size());
    if (empty_) {
      out.assign(checkpoints.size(), 0);
      return out;
    }
    std::vector<std::vector<Limb>> acc(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const FixedPoint* a = alpha[j].as_fixed();
      if (!a || a->bits() != bits_) throw BackendMismatch("kernel needs fixed-point alpha at the kernel precision");
      for (const auto& d : diffs_[j]) {
        FixedPoint term = a->times(d);
        acc[j].insert(acc[j].end(), term.limbs().begin(), term.limbs().end());
      }
    }
    std::vector<Limb> tmp(limbs_);
    std::size_t c = 0;
    while (c < checkpoints.size() && checkpoints[c] < start_) {
      out.push_back(0);
      ++c;
    }
    std::uint64_t count = 0;
    for (std::uint64_t q = start_; q <= h_; ++q) {
      std::span<const Limb> t(thresholds_.data() + (q - start_) * limbs_, limbs_);
      bool hit = true;
      for (std::size_t j = 0; j < dim_ && hit; ++j) {
        fixed_kernel::circle_dist(std::span<const Limb>(acc[j].data(), limbs_),
                                  std::span<const Limb>(x_.data() + j * limbs_, limbs_), tmp);
        hit = fixed_kernel::less(tmp, t);
      }
      if (hit) {
        ++count;
        if (log) log->push_back(BigInt(q));
      }
      while (c < checkpoints.size() && checkpoints[c] == q) {
        out.push_back(count);
        ++c;
      }
      if (c == checkpoints.size()) break;
      for (std::size_t j = 0; j < dim_; ++j) {
        const std::size_t terms = diffs_[j].size();
        for (std::size_t i = 0; i + 1 < terms; ++i)
          fixed_kernel::add_mod(std::span<Limb>(acc[j].data() + i * limbs_, limbs_),
                                std::span<const Limb>(acc[j].data() + (i + 1) * limbs_, limbs_));
      }
    }
    return out;
  }

 private:
  std::size_t bits_, limbs_, dim_;
  std::uint64_t h_;
  std::uint64_t start_ = 1;
  bool empty_ = false;
  std::vector<std::vector<BigInt>> diffs_;
  std::vector<Limb> x_;
  std::vector<Limb> thresholds_;
};

/// The kernel applies to expanding actions on a curve with fixed-point alpha and dyadic targets.
std::optional<RadiusSequence::CurveView> kernel_view(const SystemSpec& s, const TorusPoint& alpha,
                                                     const std::vector<Rational>& x, const RadiusSequence& r) {
  if (s.invertible() || alpha.backend() != Backend::Fixed) return std::nullopt;
  auto view = r.curve_view();
  if (!view || view->spec.dim() != s.dim()) return std::nullopt;
  for (const auto& xj : x)
    if (!dyadic_at(frac(xj), alpha[0].bits())) return std::nullopt;
  return view;
}

/// Ordinals q <= h that hit, via forward().
std::vector<BigInt> generic_hits(const SystemSpec& s, const TorusPoint& alpha, const std::vector<Rational>& x,
                                 const RadiusSequence& r, std::uint64_t h, std::size_t output_bits) {
  std::vector<BigInt> hits;
  r.for_each_support(BigInt(h), [&](const SupportEntry& e) {
    TorusPoint y = forward(s, e.index, alpha, output_bits);
    bool hit = true;
    for (std::size_t j = 0; j < x.size() && hit; ++j) hit = within(dist(y[j].value(), x[j]), e.radius);
    if (hit) hits.push_back(e.ordinal);
    return true;
  });
  return hits;
}

std::vector<Rational> exact_image(const SystemSpec& s, const std::vector<BigInt>& g, const std::vector<Rational>& alpha) {
  std::vector<Rational> y(alpha.size());
  if (const DenjoyMap* f = s.denjoy_map()) {
    y[0] = f->power(alpha[0], g[0]);
  } else if (const Rotation* rot = s.rotation_data()) {
    if (rot->irrational) throw DomainError("naive enumeration needs a rational rotation angle");
    y[0] = frac(alpha[0] + Rational(g[0]) * rot->theta);
  } else {
    for (std::size_t j = 0; j < alpha.size(); ++j) y[j] = frac(Rational(g[j]) * alpha[j]);
  }
  return y;
}

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CountingProfile counting_profile(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                                 const RadiusSequence& r, std::uint64_t h) {
  if (measures.size() != r.dim() || x.size() != r.dim()) throw DomainError("one measure and one center per coordinate");
  CountingProfile out;
  out.psi.assign(h, SqrtRational());
  MeasureSumBuilder builder(partial_measure_sum(measures, x, r, 1, BigInt(0)).divergence);
  Rational psi_error = 0;
  for (const auto& m : measures) psi_error += 2 * m.error_bound();
  r.for_each_support(BigInt(h), [&](const SupportEntry& e) {
    SqrtRational psi = SqrtRational::of(1);
    for (std::size_t j = 0; j < measures.size(); ++j) psi = psi * ball_mass(measures[j], x[j], e.radius);
    out.psi[e.ordinal.convert_to<std::size_t>() - 1] = psi;
    builder.add(psi, 1, psi_error);
    return true;
  });
  out.total = builder.snapshot();
  return out;
}

HitCountResult hit_count(const SystemSpec& s, const TorusPoint& alpha, const std::vector<Rational>& x,
                         const RadiusSequence& r, std::uint64_t h, const HitOptions& opts) {
  if (alpha.dim() != s.dim()) throw DomainError("alpha dimension does not match the system");
  check_shapes(s.dim(), x, r);
  HitCountResult out;
  out.h = h;
  std::vector<BigInt> hits;
  if (auto view = kernel_view(s, alpha, x, r)) {
    CurveKernel kernel(*view, x, h, alpha[0].bits(), opts.output_bits);
    out.count = kernel.run(alpha, {h}, opts.log_hits ? &hits : nullptr).front();
  } else {
    hits = generic_hits(s, alpha, x, r, h, opts.output_bits);
    out.count = hits.size();
  }
  if (opts.log_hits) out.hits = std::move(hits);
  out.psi = lebesgue_psi(x, r, {h}).front();
  out.ratio = out.psi.value > 0 ? static_cast<double>(out.count) / to_double(out.psi.value) : 0.0;
  return out;
}

std::uint64_t naive_hit_count(const SystemSpec& s, const std::vector<Rational>& alpha, const std::vector<Rational>& x,
                              const RadiusSequence& r, std::uint64_t h) {
  if (alpha.size() != s.dim()) throw DomainError("alpha dimension does not match the system");
  check_shapes(s.dim(), x, r);
  std::uint64_t count = 0;
  auto test = [&](const std::vector<BigInt>& g) {
    const SqrtRational radius = r.eval(SemigroupIndex(g));
    if (radius.is_zero()) return;
    const std::vector<Rational> y = exact_image(s, g, alpha);
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!within(dist(y[j], x[j]), radius)) return;
    ++count;
  };
  if (auto view = r.curve_view()) {
    for (std::uint64_t q = 1; q <= h; ++q) {
      if (BigInt(q) < view->spec.start) continue;
      test(view->spec.point(BigInt(q)));
    }
    return count;
  }
  if (s.dim() != 1) throw DomainError("naive enumeration off a curve needs a one-dimensional system");
  auto sup = r.support(BigInt(h));
  if (sup.empty()) return 0;
  const BigInt last = sup.back().index[0];
  if (last > 1000000) throw DomainError("naive enumeration is capped at index 10^6");
  for (std::uint64_t n = 1; BigInt(n) <= last; ++n) test({BigInt(n)});
  return count;
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) { return splitmix64(master ^ splitmix64(index)); }

TorusPoint sample_point(const SampleSpec& spec, std::uint64_t index, std::size_t dim) {
  if (spec.bits < 128 || spec.bits % 64 != 0) throw DomainError("sample precision must be a multiple of 64, at least 128");
  std::mt19937_64 rng(sample_seed(spec.master_seed, index));
  std::vector<CirclePoint> coords;
  coords.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    FixedPoint v(spec.bits);
    do {
      for (auto& limb : v.limbs()) limb = rng();
    } while (spec.bits - v.trailing_zeros() < 64);
    coords.push_back(spec.backend == Backend::Fixed ? CirclePoint::fixed(v) : CirclePoint::exact(v.to_rational()));
  }
  return TorusPoint(std::move(coords));
}

ExponentFit error_exponent_fit(std::span<const ExponentPoint> data) {
  ExponentFit fit;
  std::vector<double> xs, ys;
  for (const auto& p : data) {
    if (!(p.psi > 1) || p.count == p.psi) continue;
    xs.push_back(std::log(p.psi));
    ys.push_back(std::log(std::abs(p.count - p.psi)));
  }
  fit.sample_size = xs.size();
  if (xs.size() < 5) {
    fit.reason = "fewer than 5 points with Psi > 1 and N != Psi";
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) {
    fit.reason = "Psi does not vary";
    return fit;
  }
  fit.degenerate = false;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

Quantiles summarize(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (double v : values) q.mean += v;
  q.mean /= n;
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - q.mean) * (v - q.mean);
    q.stddev = std::sqrt(ss / (n - 1));
  }
  q.min = values.front();
  q.max = values.back();
  q.q05 = quantile(values, 0.05);
  q.q25 = quantile(values, 0.25);
  q.median = quantile(values, 0.5);
  q.q75 = quantile(values, 0.75);
  q.q95 = quantile(values, 0.95);
  return q;
}

KgsTrialResult kgs_trial(const SystemSpec& s, const std::vector<Rational>& x, const RadiusSequence& r,
                         std::uint64_t h, const SampleSpec& samples, const TrialOptions& opts) {
  check_shapes(s.dim(), x, r);
  if (h < 1) throw DomainError("horizon must be positive");
  if (samples.count == 0) throw DomainError("sample count must be positive");
  if (opts.batch_size == 0) throw DomainError("batch size must be positive");

  KgsTrialResult out;
  out.samples = samples;
  for (auto c : opts.checkpoints)
    if (c >= 1 && c <= h) out.horizons.push_back(c);
  out.horizons.push_back(h);
  std::sort(out.horizons.begin(), out.horizons.end());
  out.horizons.erase(std::unique(out.horizons.begin(), out.horizons.end()), out.horizons.end());

  const std::vector<MeasureSum> psi = lebesgue_psi(x, r, out.horizons);
  for (std::size_t i = 0; i < samples.count; ++i) out.seeds.push_back(sample_seed(samples.master_seed, i));

  // The kernel is built once from a probe point; every sample shares its precision.
  const TorusPoint probe = sample_point(samples, 0, s.dim());
  std::optional<CurveKernel> kernel;
  if (auto view = kernel_view(s, probe, x, r)) kernel.emplace(*view, x, h, samples.bits, opts.output_bits);

  out.counts.assign(samples.count, {});
  std::vector<std::exception_ptr> errors(samples.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < samples.count;) {
      try {
        const TorusPoint alpha = sample_point(samples, i, s.dim());
        if (kernel) {
          out.counts[i] = kernel->run(alpha, out.horizons, nullptr);
        } else {
          auto hits = generic_hits(s, alpha, x, r, h, opts.output_bits);
          for (auto c : out.horizons)
            out.counts[i].push_back(static_cast<std::uint64_t>(
                std::upper_bound(hits.begin(), hits.end(), BigInt(c)) - hits.begin()));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = samples.threads ? samples.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, samples.count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t c = 0; c < out.horizons.size(); ++c) {
    CheckpointStats st;
    st.h = out.horizons[c];
    st.psi = psi[c];
    const double p = to_double(psi[c].value);
    if (p > 0) {
      std::vector<double> ratio, normalized;
      for (const auto& counts : out.counts) {
        const double n = static_cast<double>(counts[c]);
        ratio.push_back(n / p);
        normalized.push_back((n - p) / std::sqrt(p));
      }
      st.ratio = summarize(std::move(ratio));
      st.normalized_error = summarize(std::move(normalized));
    }
    out.stats.push_back(std::move(st));
  }

  std::vector<double> slopes;
  for (std::size_t b = 0; b < samples.count; b += opts.batch_size) {
    std::vector<ExponentPoint> pts;
    for (std::size_t i = b; i < std::min(samples.count, b + opts.batch_size); ++i)
      for (std::size_t c = 0; c < out.horizons.size(); ++c)
        pts.push_back({static_cast<double>(out.horizons[c]), static_cast<double>(out.counts[i][c]),
                       to_double(psi[c].value)});
    ExponentFit fit = error_exponent_fit(pts);
    if (!fit.degenerate) slopes.push_back(fit.slope);
    out.batch_fits.push_back(std::move(fit));
  }
  if (!slopes.empty()) out.median_exponent = summarize(slopes).median;

  out.underpowered = psi.back().value < 5;
  std::size_t repeat = 0;
  for (const auto& counts : out.counts)
    if (counts.back() >= opts.repeat_threshold) ++repeat;
  out.repeat_fraction = static_cast<double>(repeat) / static_cast<double>(samples.count);
  return out;
}

TailUnionProfile tail_union_profile(const SystemSpec& s, const Rational& x, const RadiusSequence& r, std::size_t K,
                                    const CircleMeasure& reference, UnionRoute route) {
  if (!s.invertible()) throw DomainError("tail unions need an invertible system");
  if (r.dim() != 1) throw DomainError("tail unions need a one-dimensional radius sequence");
  if (K < 1) throw DomainError("horizon K must be positive");
  if (route == UnionRoute::Lebesgue && reference.kind() != CircleMeasure::Kind::Lebesgue)
    throw DomainError("the Lebesgue route needs the Lebesgue reference measure");

  const auto entries = r.support(BigInt(K));
  std::vector<BigInt> steps;
  std::vector<Arc> balls;
  for (const auto& e : entries) {
    auto radius = e.radius.rational();
    if (!radius) throw DomainError("tail unions need rational radii, got " + e.radius.str());
    steps.push_back(e.index[0]);
    balls.emplace_back(x, *radius);
  }
  const auto pre = preimage_balls(s, steps, balls);

  TailUnionProfile out;
  out.horizon = K;
  out.route = route;
  out.u.assign(K, Rational(0));
  ArcUnion un = route == UnionRoute::Lebesgue
                    ? ArcUnion()
                    : ArcUnion([&reference](const Rational& a, const Rational& b) {
                        return reference.cdf(b) - reference.cdf(a);
                      });
  std::size_t next = entries.size();
  std::size_t max_pieces = 0;
  Rational endpoint_error = 0;
  for (std::size_t l = K; l >= 1; --l) {
    while (next > 0 && entries[next - 1].ordinal >= l) {
      --next;
      if (entries[next].ordinal == l) {
        un.insert(pre[next].arc);
        endpoint_error += 2 * pre[next].error_bound;
      }
    }
    max_pieces = std::max(max_pieces, un.piece_count());
    out.u[l - 1] = un.measure();
  }

  Rational lipschitz = 1;
  if (reference.kind() == CircleMeasure::Kind::DenjoyInvariant)
    lipschitz = 1 / (1 - reference.denjoy_map()->model_gap_length());
  if (reference.kind() == CircleMeasure::Kind::Lebesgue || reference.kind() == CircleMeasure::Kind::DenjoyInvariant ||
      endpoint_error == 0)
    out.error_bound = lipschitz * endpoint_error;
  else
    out.error_bound = 1;  // no modulus of continuity is known for this CDF
  if (route == UnionRoute::Cdf) out.error_bound += 2 * Rational(max_pieces) * reference.error_bound();
  out.error_bound = std::min(out.error_bound, Rational(1));

  MeasureSumBuilder sum;
  for (const auto& e : entries)
    sum.add(SqrtRational::of(reference.ball_mass(x, *e.radius.rational())), 1, 2 * reference.error_bound());
  out.ball_sum = sum.snapshot();
  return out;
}

TailUnionResult tail_union_measure(const SystemSpec& s, const Rational& x, const RadiusSequence& r, std::size_t l,
                                   std::size_t K, const CircleMeasure& reference) {
  if (l < 1 || l > K) throw DomainError("tail start l must satisfy 1 <= l <= K");
  const UnionRoute route =
      reference.kind() == CircleMeasure::Kind::Lebesgue ? UnionRoute::Lebesgue : UnionRoute::Cdf;
  auto profile = tail_union_profile(s, x, r, K, reference, route);
  return {l, K, profile.u[l - 1], profile.error_bound};
}

OracleReport oracle_hit_count(const SystemSpec& s, const TorusPoint& alpha, const std::vector<Rational>& x,
                              const RadiusSequence& r, std::uint64_t h) {
  if (h > 1000) throw DomainError("the hit-count oracle is capped at h = 1000");
  std::vector<Rational> exact;
  for (const auto& c : alpha.coords()) exact.push_back(c.value());
  const auto fast = hit_count(s, alpha, x, r, h).count;
  const auto naive = naive_hit_count(s, exact, x, r, h);
  std::ostringstream inst, wit;
  inst << s.name() << " h=" << h << " alpha=";
  for (std::size_t j = 0; j < exact.size(); ++j) inst << (j ? "," : "") << to_double(exact[j]);
  wit << "hit_count=" << fast << " naive=" << naive;
  return {OracleComponent::HitCount, fast == naive, inst.str(), wit.str()};
}

OracleReport oracle_union_measure(std::span<const Arc> arcs, std::uint64_t points, std::uint64_t seed) {
  if (points == 0) throw DomainError("sampling needs at least one point");
  const Rational exact = union_measure(arcs);
  std::vector<std::pair<double, double>> spans;
  for (const auto& a : arcs)
    if (!a.empty()) spans.emplace_back(to_double(a.start()), to_double(a.length()));
  std::mt19937_64 rng(seed);
  std::uint64_t inside = 0;
  for (std::uint64_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    for (const auto& [start, len] : spans) {
      double d = u - start;
      if (d < 0) d += 1;
      if (d > 0 && d < len) {
        ++inside;
        break;
      }
    }
  }
  const double p = to_double(exact);
  const double phat = static_cast<double>(inside) / static_cast<double>(points);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(points));
  const bool pass = sigma > 0 ? std::abs(phat - p) <= 3 * sigma : phat == p;
  std::ostringstream inst, wit;
  inst << arcs.size() << " arcs, " << points << " points, seed " << seed;
  wit << "exact=" << p << " sampled=" << phat << " sigma=" << sigma;
  return {OracleComponent::UnionMeasure, pass, inst.str(), wit.str()};
}

OracleReport oracle_t_sequence(const CircleMeasure& m, const Rational& x, std::uint64_t n, const Rational& grid_step,
                               const ProbeOptions& opts) {
  if (grid_step <= 0) throw DomainError("grid step must be positive");
  const Rational t = t_sequence(m, x, n, opts);
  const Rational target = Rational(1) / Rational(n);
  Rational grid = 0;
  while (grid < Rational(1, 2) && m.ball_mass(x, grid) < target) grid += grid_step;
  grid = std::min(grid, Rational(1, 2));
  const Rational diff = abs(t - grid);
  const bool pass = diff <= 2 * opts.tol + grid_step;
  std::ostringstream inst, wit;
  inst << m.name() << " x=" << to_string(x) << " n=" << n << " step=" << to_double(grid_step);
  wit << "bisection=" << to_double(t) << " grid=" << to_double(grid) << " diff=" << to_double(diff);
  return {OracleComponent::TSequence, pass, inst.str(), wit.str()};
}

OracleReport oracle_counting_profile(std::span<const CircleMeasure> measures, const std::vector<Rational>& x,
                                     const RadiusSequence& r, std::uint64_t h) {
  const auto profile = counting_profile(measures, x, r, h);
  const auto direct = partial_measure_sum(measures, x, r, 1, BigInt(h));
  const bool pass = profile.total.value == direct.value && profile.total.exact == direct.exact;
  std::ostringstream inst, wit;
  inst << "h=" << h << " dim=" << x.size();
  wit << "counting_profile=" << to_string(profile.total.value) << " partial_sum=" << to_string(direct.value);
  return {OracleComponent::CountingProfile, pass, inst.str(), wit.str()};
}

}  // namespace stp
