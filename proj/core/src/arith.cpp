#include "sqdiff/arith.hpp"

#include <cmath>
#include <limits>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

using u128 = unsigned __int128;

std::uint64_t tau3_from_exponent(std::uint64_t e) { return (e + 1) * (e + 2) / 2; }

std::uint64_t tau3_trial_division(std::uint64_t n) {
  std::uint64_t result = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= tau3_from_exponent(e);
  }
  if (n > 1) result *= 3;
  return result;
}

std::uint64_t checked_pow(std::uint64_t base, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) throw OverflowError("integer weight overflows 64 bits");
  }
  return out;
}

const Tau3Table& default_table() {
  static const Tau3Table table(kDefaultSieveBound);
  return table;
}

}  // namespace

Tau3Table::Tau3Table(std::uint64_t bound) : bound_(bound), smallest_factor_(bound + 1, 0) {
  for (std::uint64_t i = 2; i <= bound_; ++i) {
    if (smallest_factor_[i] != 0) continue;
    for (std::uint64_t j = i; j <= bound_; j += i) {
      if (smallest_factor_[j] == 0) smallest_factor_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint64_t Tau3Table::operator()(std::uint64_t n) const {
  if (n == 0) throw InvalidArgument("tau3 is defined for n >= 1");
  if (n > bound_) return tau3_trial_division(n);
  std::uint64_t result = 1;
  while (n > 1) {
    const std::uint32_t p = smallest_factor_[n];
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= tau3_from_exponent(e);
  }
  return result;
}

std::uint64_t tau3(std::uint64_t n) { return default_table()(n); }

std::uint64_t tau3_by_triples(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("tau3 is defined for n >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    const std::uint64_t rest = n / a;
    for (std::uint64_t b = 1; b <= rest; ++b) {
      if (rest % b == 0) ++count;
    }
  }
  return count;
}

WeightFunction weight_one() {
  return {"one", [](std::uint64_t) { return 1.0; }, [](std::uint64_t) -> std::uint64_t { return 1; }};
}

WeightFunction weight_zero() {
  return {"zero", [](std::uint64_t) { return 0.0; }, [](std::uint64_t) -> std::uint64_t { return 0; }};
}

WeightFunction weight_tau3_power(int k) {
  if (k < 0) throw InvalidArgument("tau3 power must be >= 0");
  if (k == 0) {
    WeightFunction w = weight_one();
    w.label = "tau3^0";
    return w;
  }
  return {"tau3^" + std::to_string(k),
          [k](std::uint64_t n) { return std::pow(static_cast<double>(tau3(n)), k); },
          [k](std::uint64_t n) { return checked_pow(tau3(n), k); }};
}

WeightFunction weight_product(const WeightFunction& a, const WeightFunction& b) {
  WeightFunction w;
  w.label = a.label + "*" + b.label;
  w.value = [va = a.value, vb = b.value](std::uint64_t n) { return va(n) * vb(n); };
  if (a.integer_valued() && b.integer_valued()) {
    w.exact = [ea = a.exact, eb = b.exact](std::uint64_t n) {
      std::uint64_t out = 0;
      if (__builtin_mul_overflow(ea(n), eb(n), &out)) throw OverflowError("integer weight overflows 64 bits");
      return out;
    };
  }
  return w;
}

WeightFunction weight_from(std::string label, std::function<double(std::uint64_t)> fn) {
  return {std::move(label), std::move(fn), {}};
}

double maximal_average(const WeightFunction& w, std::uint64_t X) {
  if (X < 1) throw InvalidArgument("maximal_average needs X >= 1");
  if (w.integer_valued()) {
    // Exact argmax: compare S(x)/x > S(b)/b as S(x)*b > S(b)*x.
    u128 sum = 0;
    u128 best_sum = 0;
    std::uint64_t best_x = 0;
    for (std::uint64_t x = 1; x <= X; ++x) {
      sum += w.exact(x);
      if (best_x == 0 || sum * best_x > best_sum * x) {
        best_sum = sum;
        best_x = x;
      }
    }
    return static_cast<double>(static_cast<long double>(best_sum) / static_cast<long double>(best_x));
  }
  long double sum = 0;
  long double best = -std::numeric_limits<long double>::infinity();
  for (std::uint64_t x = 1; x <= X; ++x) {
    sum += w(x);
    best = std::max(best, sum / static_cast<long double>(x));
  }
  return static_cast<double>(best);
}

double log_maximal_average(const WeightFunction& w, std::uint64_t X) {
  if (X < 2) throw InvalidArgument("log_maximal_average needs X >= 2");
  long double sum = w(1);
  long double comp = 0;
  long double best = -std::numeric_limits<long double>::infinity();
  for (std::uint64_t x = 2; x <= X; ++x) {
    // Kahan update of sum_{n<=x} w(n)/n.
    const long double term = static_cast<long double>(w(x)) / static_cast<long double>(x) - comp;
    const long double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    best = std::max(best, sum / std::log(static_cast<long double>(x)));
  }
  return static_cast<double>(best);
}

SubmultiplicativeReport validate_submultiplicative(const WeightFunction& w, std::uint64_t X) {
  if (X < 1) throw InvalidArgument("validate_submultiplicative needs X >= 1");
  SubmultiplicativeReport report;
  const bool exact = w.integer_valued();
  std::vector<double> values(X + 1, 0.0);
  std::vector<std::uint64_t> ints(exact ? X + 1 : 0, 0);
  for (std::uint64_t n = 1; n <= X; ++n) {
    values[n] = w(n);
    if (exact) ints[n] = w.exact(n);
  }
  using Kind = SubmultiplicativeViolation::Kind;
  for (std::uint64_t a = 1; a <= X; ++a) {
    for (std::uint64_t b = 1; a * b <= X; ++b) {
      const bool bad = exact ? static_cast<u128>(ints[a * b]) > static_cast<u128>(ints[a]) * ints[b]
                             : values[a * b] > values[a] * values[b];
      if (bad) {
        report.passed = false;
        report.counterexample = SubmultiplicativeViolation{Kind::product, a, b, values[a * b], values[a] * values[b]};
        return report;
      }
    }
  }
  for (std::uint64_t d = 1; d <= X; ++d) {
    for (std::uint64_t n = 2 * d; n <= X; n += d) {
      const bool bad = exact ? ints[d] > ints[n] : values[d] > values[n];
      if (bad) {
        report.passed = false;
        report.counterexample = SubmultiplicativeViolation{Kind::divisor, d, n, values[d], values[n]};
        return report;
      }
    }
  }
  return report;
}

RankinReport rankin_check(const WeightFunction& w, std::uint64_t X) {
  if (X < 2) throw InvalidArgument("rankin_check needs X >= 2");
  RankinReport r{};
  r.max_average = maximal_average(w, X);
  r.log_max_average = log_maximal_average(w, X);
  r.ratio = r.max_average / (std::log(static_cast<double>(X)) * r.log_max_average);
  // Each term w(n) <= x * w(n)/n needs only w(n) >= 0 and n <= x; check the
  // weights and then the aggregated inequality with integer partial sums.
  r.termwise_ok = true;
  long double harmonic = 0;
  long double plain = 0;
  for (std::uint64_t x = 1; x <= X && r.termwise_ok; ++x) {
    const double v = w(x);
    if (v < 0) r.termwise_ok = false;
    plain += v;
    harmonic += static_cast<long double>(v) / static_cast<long double>(x);
    if (plain > static_cast<long double>(x) * harmonic * (1 + 1e-15L)) r.termwise_ok = false;
  }
  return r;
}

}  // namespace sqdiff
