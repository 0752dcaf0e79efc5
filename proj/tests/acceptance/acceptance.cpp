// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Thresholds are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sqdiff/chang.hpp"
#include "sqdiff/decomposition.hpp"
#include "sqdiff/energy.hpp"
#include "sqdiff/fourier.hpp"
#include "sqdiff/arcs.hpp"
#include "sqdiff/increment.hpp"
#include "sqdiff/random.hpp"
#include "sqdiff/sdf.hpp"

using namespace sqdiff;

namespace {

constexpr double kBackendSeconds = 60;
constexpr double kDecompositionSeconds = 120;
constexpr double kIncrementSeconds = 30;
constexpr double kGaussTol = 1e-9;
constexpr double kParsevalRelTol = 1e-6;
constexpr double kFejerTol = 1e-9;
constexpr double kRegressionFactor = 1.5;

// Largest E_4(B) / (Q n)^2 over seeds 1..5, recorded on the first run.
struct EnergyRegression {
  std::int64_t Q;
  double ratio;
};
constexpr EnergyRegression kEnergyRegression[] = {
    {16, 0.597656},
    {32, 0.547852},
    {64, 0.523682},
    {128, 0.512268},
};

// Desk-scale constants for the increment and the iteration.
ConstantsConfig desk_profile() {
  ConstantsConfig c;
  c.C_kdef = 1e-3;
  c.c0_nprime = 1.0;
  return c;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RationalSet random_rational_set(Rng& rng, std::int64_t max_den, std::size_t max_size) {
  static const RationalSet pool20 = enumerate_rationals(20);
  static const RationalSet pool30 = enumerate_rationals(30);
  const RationalSet& pool = max_den == 20 ? pool20 : pool30;
  std::vector<ReducedRational> v(pool.begin(), pool.end());
  const auto size = static_cast<std::size_t>(rng.uniform(1, max_size));
  for (std::size_t i = 0; i < size; ++i) std::swap(v[i], v[i + rng.uniform(0, v.size() - i - 1)]);
  v.resize(size);
  return RationalSet::from_elements(v);
}

// Criteria 1 and 2 share their instances.
void energy_backends() {
  const auto t0 = Clock::now();
  Rng rng(20240601);
  std::size_t mismatches = 0;
  std::size_t diagonal_violations = 0;
  std::size_t diagonal_checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto B = random_rational_set(rng, 20, 10);
    for (int m : {2, 3}) {
      const auto brute = energy_brute(B, m);
      const auto mitm = energy_mitm(B, m);
      const auto conv = energy_from_convolution(convolution_power(B, m));
      if (brute != mitm || brute != conv) ++mismatches;
      if (B.size() > static_cast<std::size_t>(m)) {
        ++diagonal_checked;
        if (brute < diagonal_lower(B.size(), m)) ++diagonal_violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  report(1, "backend equivalence", mismatches == 0 && secs < kBackendSeconds,
         fmt("400 comparisons, %zu mismatches, %.2f s (limit %.0f s)", mismatches, secs, kBackendSeconds));
  report(2, "diagonal lower bound", diagonal_violations == 0 && diagonal_checked > 0,
         fmt("%zu instances with |B| > m, %zu violations", diagonal_checked, diagonal_violations));
}

void decomposition() {
  const auto t0 = Clock::now();
  static const RationalSet pool = enumerate_rationals(30);
  Rng rng(777);
  const WeightFunction weights[] = {weight_one(), weight_tau3_power(2), weight_tau3_power(4)};
  const char* wanted[] = {"residue_count", "unpopular_total", "popular_pointwise", "popular_closed", "injectivity"};
  std::size_t violations = 0;
  std::uint64_t comparisons = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    const auto A = random_rational_set(rng, 30, 25);
    const auto B = random_rational_set(rng, 30, 25);
    std::set<Rational> cs;
    for (int k = 0; k < 12; ++k) {
      const Rational d = Rational(A[rng.uniform(0, A.size() - 1)]) - Rational(B[rng.uniform(0, B.size() - 1)]);
      if (!d.is_zero()) cs.insert(d);
      cs.insert(Rational(pool[rng.uniform(0, pool.size() - 1)]));
    }
    const std::vector<Rational> C(cs.begin(), cs.end());
    std::int64_t L = 2;
    for (const auto& b : B) L = std::max(L, b.den());
    const std::int64_t n = B.max_per_denominator();
    const auto& w = weights[i % 3];
    const double T = i % 2 == 0 ? optimal_T(A, B, C, w, L, n) : 0.5 + 4.0 * rng.uniform01();
    const auto rep = verify_decomposition_bounds(A, B, C, T, w, L, n);
    for (const char* name : wanted) {
      const auto* c = rep.find(name);
      if (c == nullptr || !c->passed) {
        ++violations;
        if (first.empty()) first = fmt(" (instance %d, %s%s%s)", i, name, c ? ": " : "", c ? c->witness.c_str() : "");
      } else {
        comparisons += c->instances;
      }
    }
  }
  const double secs = seconds_since(t0);
  report(3, "decomposition exactness", violations == 0 && secs < kDecompositionSeconds,
         fmt("100 instances, %llu comparisons, %zu violations%s, %.2f s (limit %.0f s)",
             static_cast<unsigned long long>(comparisons), violations, first.c_str(), secs, kDecompositionSeconds));
}

void gauss() {
  double worst_odd = 0;
  double worst_ratio = 0;
  std::size_t checked = 0;
  for (std::int64_t q = 1; q <= 500; ++q) {
    const double root = std::sqrt(static_cast<double>(q));
    for (std::int64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double mag = std::abs(gauss_sum(a, q));
      ++checked;
      if (q % 2 == 1 && q <= 499) worst_odd = std::max(worst_odd, std::abs(mag - root));
      worst_ratio = std::max(worst_ratio, mag - std::sqrt(2.0 * static_cast<double>(q)));
    }
  }
  report(4, "gauss sums", worst_odd < kGaussTol && worst_ratio <= kGaussTol,
         fmt("%zu sums, max ||S| - sqrt q| (odd q) = %.2e, max |S| - sqrt(2q) = %.2e", checked, worst_odd,
             worst_ratio));
}

void parseval() {
  Rng rng(99);
  double worst = 0;
  bool converged = true;
  for (int i = 0; i < 20; ++i) {
    const auto N = static_cast<std::int64_t>(rng.uniform(16, 2048));
    const auto A = random_subset(N, 0.02 + 0.9 * rng.uniform01(), rng.next());
    const double alpha = A.density();
    const double exact = alpha * (1 - alpha) * static_cast<double>(N);
    const auto r = full_circle_g_squared(A);
    converged = converged && r.converged;
    worst = std::max(worst, exact > 0 ? std::abs(r.value - exact) / exact : std::abs(r.value));
  }
  report(5, "parseval", worst < kParsevalRelTol && converged,
         fmt("20 sets, max relative error %.2e (limit %.0e)", worst, kParsevalRelTol));
}

void zero_identity() {
  std::vector<IntegerSet> fixtures;
  for (std::int64_t N = 100; fixtures.size() < 17; N = N * 3 / 2) fixtures.push_back(greedy_sdf(N));
  for (std::int64_t i = 0; i < 17; ++i) {
    const std::int64_t q = 2 + i % 5;
    fixtures.push_back(planted_sdf(500 + 300 * i, q, 1 + i % q, static_cast<std::uint64_t>(i), i % 2 ? 0.6 : 1.0));
  }
  for (std::uint64_t s = 0; s < 16; ++s) fixtures.push_back(random_sdf(200 + 150 * static_cast<std::int64_t>(s), s));
  std::size_t nonzero = 0;
  for (const auto& A : fixtures) {
    if (!is_sdf(A) || correlation_count(A).value != 0.0) ++nonzero;
  }
  std::size_t non_sdf = 0;
  std::size_t bad_witness = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto A = random_subset(100 + 10 * static_cast<std::int64_t>(s), 0.01 + 0.003 * static_cast<double>(s), s);
    const auto r = correlation_count(A);
    if (is_sdf(A)) {
      if (r.value != 0.0) ++bad_witness;
      continue;
    }
    ++non_sdf;
    const bool ok = r.value > 0 && r.witness && A.contains(r.witness->a) && A.contains(r.witness->b) &&
                    r.witness->a - r.witness->b == r.witness->n * r.witness->n;
    if (!ok) ++bad_witness;
  }
  report(6, "circle-method zero identity", nonzero == 0 && bad_witness == 0 && non_sdf > 0,
         fmt("%zu SDF fixtures, %zu nonzero; %zu non-SDF sets, %zu without a valid witness", fixtures.size(),
             nonzero, non_sdf, bad_witness));
}

void fejer_chang() {
  double worst = 0;
  for (std::int64_t N : {256, 1024}) {
    for (int i = 0; i < 1000; ++i) {
      const double beta = -0.5 + (i + 0.5) / 1000.0;
      worst = std::max(worst, std::abs(fejer_series_sum(beta, N) - fejer_poisson_closed_form(beta, N)));
    }
  }
  Rng rng(4242);
  std::size_t holder_fail = 0;
  std::size_t fejer_fail = 0;
  std::size_t other_fail = 0;
  for (int i = 0; i < 50; ++i) {
    const std::int64_t N = 64 << (i % 3);
    const auto A = random_subset(N, 0.1 + 0.6 * rng.uniform01(), rng.next());
    if (A.empty()) continue;
    std::vector<double> gamma(static_cast<std::size_t>(rng.uniform(1, 5)));
    for (auto& g : gamma) g = rng.uniform01();
    const int m = 1 + i % 3;
    const auto r = chang_check(A, gamma, m);
    holder_fail += !r.holder_ok;
    fejer_fail += !r.fejer_ok;
    other_fail += !(r.poisson_ok && r.chain_ok);
  }
  report(7, "fejer-poisson closed form and chain constants",
         worst < kFejerTol && holder_fail == 0 && fejer_fail == 0 && other_fail == 0,
         fmt("max deviation %.2e over 2000 betas; 50 instances: %zu holder, %zu fejer, %zu poisson/chain failures",
             worst, holder_fail, fejer_fail, other_fail));
}

void increment() {
  const auto t0 = Clock::now();
  const auto A = planted_sdf(10000, 2, 1);
  const double nu = nu_of_alpha(A.density(), desk_profile().c_nu);
  const auto r = find_increment(A, 2, 1, nu, IncrementOptions::from(desk_profile()));
  const double required = (1 + nu / 20) * A.density();
  const bool sdf = is_sdf(r.A_prime);
  const double secs = seconds_since(t0);
  report(8, "density increment",
         r.found && r.alpha_prime >= required && sdf && secs < kIncrementSeconds,
         fmt("found=%d alpha=%.5f alpha'=%.5f required=%.5f N'=%lld sdf=%d, %.2f s (limit %.0f s)", r.found,
             A.density(), r.alpha_prime, required, static_cast<long long>(r.N_prime), sdf, secs,
             kIncrementSeconds));
}

void iteration() {
  const auto A = greedy_sdf(100000);
  const auto log = iterate(A, desk_profile());
  bool monotone = true;
  bool sdf = true;
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    sdf = sdf && log.steps[i].sdf;
    if (log.steps[i].q != 0) {
      monotone = monotone && log.steps[i].alpha_next >= (1 + log.nu / 20) * log.steps[i].alpha * (1 - 1e-12);
      if (i + 1 < log.steps.size()) monotone = monotone && log.steps[i + 1].alpha == log.steps[i].alpha_next;
    }
  }
  const bool within = static_cast<double>(log.steps.size()) <= log.step_bound;
  report(9, "iteration sanity", within && monotone && log.monotone && sdf && log.sdf_preserved,
         fmt("%zu steps (bound %.1f), %zu increments, termination %s, monotone=%d sdf=%d", log.steps.size(),
             log.step_bound, log.increments, log.termination.c_str(), monotone && log.monotone,
             sdf && log.sdf_preserved));
}

RationalSet one_per_denominator(std::int64_t Q, Rng& rng) {
  std::vector<ReducedRational> v;
  for (std::int64_t q = Q / 2; q <= Q; ++q) {
    const auto r = rationals_with_denominator(q);
    v.push_back(r[rng.uniform(0, r.size() - 1)]);
  }
  return RationalSet::from_elements(v);
}

void energy_regression() {
  bool ok = true;
  std::string detail;
  for (const auto& reg : kEnergyRegression) {
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed * 1000 + static_cast<std::uint64_t>(reg.Q));
      const auto B = one_per_denominator(reg.Q, rng);
      const double e = static_cast<double>(energy_mitm(B, 2));
      const double qn = static_cast<double>(reg.Q);
      worst = std::max(worst, e / (qn * qn));
    }
    const double limit = kRegressionFactor * reg.ratio;
    ok = ok && worst <= limit;
    detail += fmt("%sQ=%lld %.6f (limit %.6f)", detail.empty() ? "" : ", ", static_cast<long long>(reg.Q), worst,
                  limit);
  }
  report(10, "energy ratio regression", ok, detail);
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {energy_backends, decomposition, gauss,     parseval,  zero_identity,
                                            fejer_chang,     increment,     iteration, energy_regression};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("[FAIL] exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
