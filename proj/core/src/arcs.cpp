#include "sqdiff/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double frac_part(long double x) { return x - std::floor(x); }

std::vector<double> integrand_grid(const IntegerSet& A, ArcIntegrand kind, double x0, double h, std::size_t count) {
  std::vector<double> out(count);
  if (kind == ArcIntegrand::w_squared) {
    const auto w = TrigPoly::squares_weight(A.N()).grid(x0, h, count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::norm(w[i]);
    return out;
  }
  const BalancedTransform g(A);
  if (kind == ArcIntegrand::g_squared) {
    const auto v = g.grid(x0, h, count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::norm(v[i]);
    return out;
  }
  const auto ind = g.indicator().grid(x0, h, count);
  const auto w = TrigPoly::squares_weight(A.N()).grid(x0, h, count);
  const double scale = static_cast<double>(A.size()) / static_cast<double>(A.N());
  for (std::size_t i = 0; i < count; ++i) {
    const double gamma = static_cast<double>(static_cast<long double>(x0) + static_cast<long double>(i) * h);
    const Complex gv = ind[i] - interval_sum(A.N(), gamma) * scale;
    out[i] = std::abs(gv) * std::abs(ind[i]) * std::abs(w[i]);
  }
  return out;
}

}  // namespace

MajorArc::MajorArc(ReducedRational center, double K, std::int64_t N) : center_(center), K_(K), N_(N) {
  if (!(K > 0)) throw InvalidArgument("arc parameter K must be > 0");
  if (N < 1) throw InvalidArgument("arc parameter N must be >= 1");
  half_width_ = std::min(K / (static_cast<double>(center.den()) * static_cast<double>(N)), 0.5);
}

bool MajorArc::contains(double gamma) const {
  const double d = gamma - center_.to_double();
  return std::abs(d - std::nearbyint(d)) <= half_width_;
}

std::optional<ArcOverlap> find_arc_overlap(const std::vector<MajorArc>& arcs) {
  if (arcs.size() < 2) return std::nullopt;
  std::vector<const MajorArc*> sorted;
  for (const auto& a : arcs) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->center() < y->center(); });
  const auto overlaps = [](const MajorArc& x, const MajorArc& y) {
    if (x.half_width() >= 0.5 || y.half_width() >= 0.5) return true;
    const __int128 q = x.center().den();
    const __int128 r = y.center().den();
    __int128 D = x.center().num() * r - y.center().num() * q;
    if (D < 0) D = -D;
    D %= q * r;
    D = std::min(D, q * r - D);  // circular distance times qr
    if (x.K() == y.K() && x.N() == y.N()) {
      // D/(qr) > K/(qN) + K/(rN)  <=>  D N > K (q + r)
      const long double lhs = static_cast<long double>(D) * static_cast<long double>(x.N());
      return !(lhs > static_cast<long double>(x.K()) * static_cast<long double>(q + r));
    }
    const long double dist = static_cast<long double>(D) / static_cast<long double>(q * r);
    return !(dist > static_cast<long double>(x.half_width()) + static_cast<long double>(y.half_width()));
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const MajorArc& x = *sorted[i];
    const MajorArc& y = *sorted[(i + 1) % sorted.size()];
    if (overlaps(x, y)) return ArcOverlap{x.center(), y.center()};
    if (sorted.size() == 2) break;
  }
  return std::nullopt;
}

std::vector<MajorArc> major_arcs(std::int64_t Qmax, double K, std::int64_t N) {
  if (Qmax < 1) throw InvalidArgument("Qmax must be >= 1");
  std::vector<MajorArc> arcs;
  for (std::int64_t q = 1; q <= Qmax; ++q) {
    for (const auto& r : rationals_with_denominator(q)) arcs.emplace_back(r, K, N);
  }
  if (2.0 * K * K < static_cast<double>(N)) {
    if (const auto bad = find_arc_overlap(arcs)) {
      throw std::logic_error("major arcs at " + bad->first.to_string() + " and " + bad->second.to_string() +
                             " intersect although 2K^2 < N");
    }
  }
  return arcs;
}

QuadratureResult interval_integral(const IntegerSet& A, double lo, double hi, ArcIntegrand integrand,
                                   const QuadratureOptions& options) {
  QuadratureResult res;
  if (!(hi > lo)) return res;
  const double width = hi - lo;
  const double needed = options.nodes_per_unit_bandwidth * width * static_cast<double>(A.N());
  std::size_t n = std::max<std::size_t>(2, options.initial_intervals + options.initial_intervals % 2);
  while (static_cast<double>(n) < needed && n < options.max_intervals) n *= 2;
  double h = width / static_cast<double>(n);

  const auto initial = integrand_grid(A, integrand, lo, h, n + 1);
  const double ends = initial.front() + initial.back();
  long double odd = 0;
  long double even = 0;
  for (std::size_t i = 1; i < n; ++i) (i % 2 == 1 ? odd : even) += initial[i];
  double estimate = static_cast<double>(h / 3.0 * (ends + 4.0L * odd + 2.0L * even));

  while (true) {
    if (2 * n > options.max_intervals) {
      res.value = estimate;
      res.intervals = n;
      res.converged = false;
      return res;
    }
    const auto mids = integrand_grid(A, integrand, lo + h / 2.0, h, n);
    long double mid = 0;
    for (double v : mids) mid += v;
    const long double interior = odd + even;
    n *= 2;
    h /= 2.0;
    const double next = static_cast<double>(h / 3.0 * (ends + 4.0L * mid + 2.0L * interior));
    odd = mid;
    even = interior;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (change <= options.rel_tol * std::abs(next) + options.abs_tol) {
      res.value = estimate;
      res.intervals = n;
      res.last_change = change;
      res.converged = true;
      return res;
    }
    res.last_change = change;
  }
}

QuadratureResult arc_integral(const IntegerSet& A, const MajorArc& arc, ArcIntegrand integrand,
                              const QuadratureOptions& options) {
  if (arc.N() != A.N()) throw InvalidArgument("arc N differs from the set's N");
  return interval_integral(A, arc.lo(), arc.hi(), integrand, options);
}

QuadratureResult full_circle_g_squared(const IntegerSet& A, const QuadratureOptions& options) {
  return interval_integral(A, 0.0, 1.0, ArcIntegrand::g_squared, options);
}

ArcMassEngine::ArcMassEngine(const IntegerSet& A) : N_(A.N()), r_(static_cast<std::size_t>(A.N()), 0.0) {
  const auto& el = A.elements();
  const std::size_t n = el.size();
  std::vector<std::uint64_t> rA(static_cast<std::size_t>(N_), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) ++rA[static_cast<std::size_t>(el[j] - el[i])];
  }
  rA[0] = n;
  // below[t] = #{a in A : a <= t}
  std::vector<std::uint64_t> below(static_cast<std::size_t>(N_) + 1, 0);
  for (auto a : el) ++below[static_cast<std::size_t>(a)];
  for (std::size_t t = 1; t < below.size(); ++t) below[t] += below[t - 1];
  const long double alpha = static_cast<long double>(n) / static_cast<long double>(N_);
  for (std::int64_t h = 0; h < N_; ++h) {
    const auto up = below[static_cast<std::size_t>(N_ - h)];      // a + h <= N
    const auto down = n - below[static_cast<std::size_t>(h)];     // a - h >= 1
    const long double v = static_cast<long double>(rA[static_cast<std::size_t>(h)]) -
                          alpha * static_cast<long double>(up + down) +
                          alpha * alpha * static_cast<long double>(N_ - h);
    r_[static_cast<std::size_t>(h)] = static_cast<double>(v);
  }
}

double ArcMassEngine::mass(double center, double half_width) const {
  const long double w = half_width;
  const long double c = frac_part(static_cast<long double>(center));
  long double total = 2.0L * w * r_[0];
  for (std::int64_t h = 1; h < N_; ++h) {
    const long double hl = static_cast<long double>(h);
    const long double cs = std::cos(2.0L * kPi * frac_part(hl * c));
    const long double sn = std::sin(2.0L * kPi * frac_part(hl * w));
    total += 2.0L * r_[static_cast<std::size_t>(h)] * cs * sn / (kPi * hl);
  }
  return static_cast<double>(total);
}

std::vector<double> ArcMassEngine::masses_for_denominator(std::int64_t q, double K) const {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  const long double w = std::min<long double>(static_cast<long double>(K) / (static_cast<long double>(q) * N_), 0.5L);
  std::vector<long double> folded(static_cast<std::size_t>(q), 0.0L);
  for (std::int64_t h = 1; h < N_; ++h) {
    const long double hl = static_cast<long double>(h);
    folded[static_cast<std::size_t>(h % q)] +=
        r_[static_cast<std::size_t>(h)] * std::sin(2.0L * kPi * frac_part(hl * w)) / (kPi * hl);
  }
  std::vector<long double> cosines(static_cast<std::size_t>(q));
  for (std::int64_t t = 0; t < q; ++t) {
    cosines[static_cast<std::size_t>(t)] = std::cos(2.0L * kPi * static_cast<long double>(t) / static_cast<long double>(q));
  }
  std::vector<double> out;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    long double total = 2.0L * w * r_[0];
    for (std::int64_t j = 0; j < q; ++j) {
      total += 2.0L * folded[static_cast<std::size_t>(j)] * cosines[static_cast<std::size_t>(j * a % q)];
    }
    out.push_back(static_cast<double>(total));
  }
  return out;
}

ArcPeak arc_peak(const TrigPoly& indicator, const MajorArc& arc) {
  constexpr std::size_t kGrid = 65;
  const double lo = arc.lo();
  const double step = (arc.hi() - lo) / static_cast<double>(kGrid - 1);
  const auto values = indicator.grid(lo, step, kGrid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < kGrid; ++i) {
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  }
  ArcPeak peak{lo + static_cast<double>(best) * step, std::abs(values[best])};
  if (step <= 0) return peak;
  double a = lo + static_cast<double>(best == 0 ? 0 : best - 1) * step;
  double b = lo + static_cast<double>(std::min(best + 1, kGrid - 1)) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto f = [&](double x) { return std::abs(indicator(x)); };
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = (a + b) / 2.0;
  const double fx = f(x);
  if (fx > peak.value) peak = {x, fx};
  return peak;
}

}  // namespace sqdiff
