#pragma once

// Divisor-function arithmetic: the ternary divisor function tau_3,
// sub-multiplicative weights and their maximal averages
//
//   M(w; X)     = max_{1 <= x <= X} (1/x) sum_{n <= x} w(n)
//   M_log(w; X) = max_{2 <= x <= X} (1/log x) sum_{n <= x} w(n)/n

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sqdiff {

inline constexpr std::uint64_t kDefaultSieveBound = 1'000'000;

// Smallest-prime-factor sieve; tau_3 multiplicatively from
// tau_3(p^e) = (e+1)(e+2)/2.  Immutable after construction.
class Tau3Table {
 public:
  explicit Tau3Table(std::uint64_t bound = kDefaultSieveBound);

  std::uint64_t bound() const noexcept { return bound_; }
  // Falls back to trial division above the sieve bound.
  std::uint64_t operator()(std::uint64_t n) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> smallest_factor_;
};

// Number of ordered triples (a, b, c) with abc = n.  Throws InvalidArgument
// for n = 0.  Uses a process-wide table built on first use.
std::uint64_t tau3(std::uint64_t n);

// Brute-force tau_3 by counting ordered triples; only for small n.
std::uint64_t tau3_by_triples(std::uint64_t n);

struct WeightFunction {
  std::string label;
  std::function<double(std::uint64_t)> value;
  // Present when the weight is integer valued; the maximal averages then run
  // on exact integer partial sums.
  std::function<std::uint64_t(std::uint64_t)> exact;

  double operator()(std::uint64_t n) const { return value(n); }
  bool integer_valued() const noexcept { return static_cast<bool>(exact); }
};

WeightFunction weight_one();
WeightFunction weight_zero();
// tau_3^k; exact evaluation throws OverflowError past 2^64.
WeightFunction weight_tau3_power(int k);
WeightFunction weight_product(const WeightFunction& a, const WeightFunction& b);
WeightFunction weight_from(std::string label, std::function<double(std::uint64_t)> fn);

double maximal_average(const WeightFunction& w, std::uint64_t X);
double log_maximal_average(const WeightFunction& w, std::uint64_t X);

struct SubmultiplicativeViolation {
  enum class Kind { product, divisor } kind;
  // product: w(a*b) > w(a)*w(b); divisor: w(a) > w(b) with a | b.
  std::uint64_t a;
  std::uint64_t b;
  double lhs;
  double rhs;
};

struct SubmultiplicativeReport {
  bool passed = true;
  std::optional<SubmultiplicativeViolation> counterexample;
};

// Checks w(ab) <= w(a)w(b) for all ab <= X and w(d) <= w(n) for d | n <= X.
SubmultiplicativeReport validate_submultiplicative(const WeightFunction& w, std::uint64_t X);

struct RankinReport {
  double max_average;      // M(w; X)
  double log_max_average;  // M_log(w; X)
  double ratio;            // M / (log X * M_log), report only
  bool termwise_ok;        // sum_{n<=x} w(n) <= x sum_{n<=x} w(n)/n for all x <= X
};

RankinReport rankin_check(const WeightFunction& w, std::uint64_t X);

}  // namespace sqdiff
