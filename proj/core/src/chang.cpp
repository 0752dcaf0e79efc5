#include "sqdiff/chang.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqdiff/energy.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/fourier.hpp"

namespace sqdiff {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr double kSlack = 1e-9;

long double frac_part(long double x) { return x - std::floor(x); }

long double bernoulli2(long double x) {
  const long double f = frac_part(x);
  return f * f - f + 1.0L / 6.0L;
}

double dist_to_int(double x) { return std::abs(x - std::nearbyint(x)); }

void check_N(std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
}

struct MSum {
  double s;      // sum of m frequencies, reduced to [0, 1)
  double theta;  // sum of m phases
};

std::vector<MSum> msums(std::span<const double> gamma, std::span<const double> theta, int m) {
  std::vector<MSum> out{{0.0, 0.0}};
  for (int d = 0; d < m; ++d) {
    std::vector<MSum> next;
    next.reserve(out.size() * gamma.size());
    for (const auto& t : out) {
      for (std::size_t i = 0; i < gamma.size(); ++i) next.push_back({t.s + gamma[i], t.theta + theta[i]});
    }
    out = std::move(next);
  }
  for (auto& t : out) t.s -= std::floor(t.s);
  return out;
}

}  // namespace

double fejer_kernel(double t) {
  if (t == 0) return 1.0;
  const long double x = kPi * static_cast<long double>(t);
  const long double s = std::sin(x);
  return static_cast<double>(s * s / (x * x));
}

double fejer_hat(double xi) { return std::max(0.0, 1.0 - std::abs(xi)); }

double fejer_poisson_closed_form(double beta, std::int64_t N) {
  check_N(N);
  const double twoN = 2.0 * static_cast<double>(N);
  return twoN * std::max(0.0, 1.0 - twoN * dist_to_int(beta));
}

double fejer_series_sum(double beta, std::int64_t N) {
  check_N(N);
  const long double b = beta;
  const long double h = 1.0L / (2.0L * static_cast<long double>(N));
  const long double n2 = static_cast<long double>(N) * static_cast<long double>(N);
  return static_cast<double>(1.0L +
                             4.0L * n2 * (bernoulli2(b) - bernoulli2(b + h) / 2.0L - bernoulli2(b - h) / 2.0L));
}

double fejer_truncated_sum(double beta, std::int64_t N, std::int64_t M) {
  check_N(N);
  const long double twoN = 2.0L * static_cast<long double>(N);
  long double total = 1.0L;
  for (std::int64_t n = 1; n <= M; ++n) {
    const long double x = kPi * static_cast<long double>(n) / twoN;
    const long double s = std::sin(x);
    const long double psi = s * s / (x * x);
    total += 2.0L * psi * std::cos(2.0L * kPi * frac_part(static_cast<long double>(n) * beta));
  }
  return static_cast<double>(total);
}

ChangReport chang_check(const IntegerSet& A, std::span<const double> gamma, int m) {
  if (gamma.empty()) throw InvalidArgument("chang_check needs a nonempty frequency list");
  if (m < 1) throw InvalidArgument("chang_check needs m >= 1");
  if (A.empty()) throw InvalidArgument("chang_check needs a nonempty set");
  ChangReport rep;
  rep.m = m;
  rep.frequencies = gamma.size();
  const std::int64_t N = A.N();
  const double two_m = 2.0 * m;
  const double size = static_cast<double>(A.size());
  const double alpha = A.density();

  const TrigPoly indicator = TrigPoly::indicator(A);
  std::vector<double> theta(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const Complex v = indicator(gamma[i]);
    rep.lhs += std::abs(v);
    theta[i] = v == Complex(0.0, 0.0) ? 0.0 : -std::arg(v) / (2.0 * std::numbers::pi);
  }

  // F(n) for |n| <= 64N by per-frequency rotation, re-anchored every 128 steps.
  const std::int64_t M = 64 * N;
  const std::size_t count = static_cast<std::size_t>(2 * M + 1);
  std::vector<long double> re(count, 0.0L);
  std::vector<long double> im(count, 0.0L);
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const long double g = gamma[i];
    const long double th = theta[i];
    const double rot_angle = static_cast<double>(2.0L * kPi * frac_part(g));
    const Complex rot(std::cos(rot_angle), std::sin(rot_angle));
    Complex z;
    for (std::size_t k = 0; k < count; ++k) {
      if (k % 128 == 0) {
        const long double n = static_cast<long double>(static_cast<std::int64_t>(k) - M);
        const double angle = static_cast<double>(2.0L * kPi * frac_part(th + g * n));
        z = Complex(std::cos(angle), std::sin(angle));
      } else {
        z *= rot;
      }
      re[k] += z.real();
      im[k] += z.imag();
    }
  }
  const auto power_at = [&](std::int64_t n) {
    const auto k = static_cast<std::size_t>(n + M);
    const long double mod2 = re[k] * re[k] + im[k] * im[k];
    return std::pow(mod2, static_cast<long double>(m));
  };

  long double power_sum = 0;
  for (const auto a : A) power_sum += power_at(a);
  rep.power_sum = static_cast<double>(power_sum);
  rep.holder_rhs = std::pow(size, 1.0 - 1.0 / two_m) * std::pow(rep.power_sum, 1.0 / two_m);
  rep.holder_ok = rep.lhs <= rep.holder_rhs * (1.0 + kSlack);

  long double trunc = 0;
  const long double twoN = 2.0L * static_cast<long double>(N);
  for (std::int64_t n = -M; n <= M; ++n) {
    long double psi = 1.0L;
    if (n != 0) {
      const long double x = kPi * static_cast<long double>(n) / twoN;
      const long double s = std::sin(x);
      psi = s * s / (x * x);
    }
    trunc += psi * power_at(n);
  }
  rep.fejer_truncated = static_cast<double>(trunc);
  rep.fejer_ok = rep.power_sum <= 3.0 * rep.fejer_truncated * (1.0 + kSlack);

  // Pair sum over m-tuples: only ||s1 - s2|| < 1/2N contributes.
  auto sums = msums(gamma, theta, m);
  std::sort(sums.begin(), sums.end(), [](const MSum& x, const MSum& y) { return x.s < y.s; });
  const double h = 1.0 / (2.0 * static_cast<double>(N));
  long double series = 0;
  long double poisson = 0;
  const std::size_t n_sums = sums.size();
  for (std::size_t i = 0; i < n_sums; ++i) {
    const auto visit = [&](std::size_t j) {
      const double k = fejer_poisson_closed_form(sums[i].s - sums[j].s, N);
      poisson += k;
      series += k * std::cos(2.0 * std::numbers::pi * (sums[i].theta - sums[j].theta));
    };
    visit(i);
    // Arcs grow monotonically along the circular scan in either direction.
    std::size_t forward = 0;
    for (std::size_t step = 1; step < n_sums; ++step) {
      const std::size_t j = (i + step) % n_sums;
      const double arc = j > i ? sums[j].s - sums[i].s : sums[j].s - sums[i].s + 1.0;
      if (arc >= h) break;
      visit(j);
      forward = step;
    }
    for (std::size_t step = 1; step + forward < n_sums; ++step) {
      const std::size_t j = (i + n_sums - step) % n_sums;
      const double arc = j < i ? sums[i].s - sums[j].s : sums[i].s - sums[j].s + 1.0;
      if (arc >= h) break;
      visit(j);
    }
  }
  rep.fejer_series = static_cast<double>(series);
  rep.poisson_sum = static_cast<double>(poisson);
  rep.poisson_ok = rep.fejer_truncated <= rep.fejer_series * (1.0 + kSlack) + kSlack &&
                   rep.fejer_series <= rep.poisson_sum * (1.0 + kSlack) + kSlack;

  rep.energy_wrap_half = energy_approx(gamma, m, h, ApproxEnergyOptions{true});
  rep.energy_literal = energy_approx(gamma, m, 2.0 * h, ApproxEnergyOptions{false});
  const double e_wrap = static_cast<double>(rep.energy_wrap_half);
  rep.chain_bound = size * std::pow(6.0 * e_wrap / alpha, 1.0 / two_m);
  rep.chain_ok = rep.lhs <= rep.chain_bound * (1.0 + kSlack);
  rep.final_ratio =
      rep.lhs / (size * std::pow(alpha, -1.0 / two_m) * std::pow(static_cast<double>(rep.energy_literal), 1.0 / two_m));
  return rep;
}

}  // namespace sqdiff
