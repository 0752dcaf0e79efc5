#pragma once

// Exponential sums on the circle, e(x) = exp(2 pi i x):
//
//   1^_A(g)  = sum_{a in A} e(a g)
//   g^(g)    = 1^_A(g) - alpha 1^_[N](g)          (balanced function)
//   W^(g)    = sum_{m <= sqrt N} (2m / sqrt N) e(m^2 g)
//   S(a; q)  = sum_{n=1}^{q} e(a n^2 / q)

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqdiff/sdf.hpp"

namespace sqdiff {

using Complex = std::complex<double>;

// Finite sum sum_j c_j e(f_j g) with integer frequencies, evaluated with the
// phase f_j g reduced mod 1 in extended precision and compensated summation
// in element order.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(std::vector<std::int64_t> freqs, std::vector<double> coefs);

  static TrigPoly indicator(const IntegerSet& A);
  static TrigPoly squares_weight(std::int64_t N);  // W

  std::size_t terms() const noexcept { return freqs_.size(); }
  const std::vector<std::int64_t>& freqs() const noexcept { return freqs_; }
  const std::vector<double>& coefs() const noexcept { return coefs_; }

  Complex operator()(double gamma) const;
  // Values at gamma0 + i*step for i < count, by per-term rotation with a
  // fresh anchor every 128 steps.
  std::vector<Complex> grid(double gamma0, double step, std::size_t count) const;

 private:
  std::vector<std::int64_t> freqs_;
  std::vector<double> coefs_;
};

Complex exp_sum(const IntegerSet& A, double gamma);

// sum_{n=1}^{N} e(n g), closed form; exactly N at integer g.
Complex interval_sum(std::int64_t N, double gamma);

// Exactly 0 at integer g.
Complex balanced_exp_sum(const IntegerSet& A, double gamma);

// Balanced transform for repeated evaluation on one set.
class BalancedTransform {
 public:
  explicit BalancedTransform(const IntegerSet& A);
  Complex operator()(double gamma) const;
  std::vector<Complex> grid(double gamma0, double step, std::size_t count) const;
  const TrigPoly& indicator() const noexcept { return poly_; }
  std::int64_t N() const noexcept { return N_; }
  std::size_t size() const noexcept { return size_; }

 private:
  TrigPoly poly_;
  std::int64_t N_;
  std::size_t size_;
};

Complex W_hat(double gamma, std::int64_t N);

// Throws PreconditionError when gcd(a, q) != 1, InvalidArgument for q < 1.
Complex gauss_sum(std::int64_t a, std::int64_t q);

struct CorrelationResult {
  double value = 0;           // sum of W(b - a) over pairs with b - a = n^2 <= N
  std::uint64_t pairs = 0;    // number of such pairs
  std::optional<SquareWitness> witness;  // smallest b, then smallest n
};

// Weighted count of square differences, combinatorially.
CorrelationResult correlation_count(const IntegerSet& A);

// |W^(a/q + beta)| / (sqrt(N/q) + sqrt(q log q)(1 + |beta| N)).  q = 1 is
// accepted with q log q = 0.
double weight_arc_ratio(std::int64_t a, std::int64_t q, double beta, std::int64_t N);

// |W^(a/q + beta) - (S(a;q)/q) W^(beta)| / (sqrt(q log q)(1 + |beta| N)), q >= 2.
double weight_gauss_ratio(std::int64_t a, std::int64_t q, double beta, std::int64_t N);

// |W^(beta)| / min(sqrt N, 1/(beta sqrt N)) for 0 < beta <= N^{-7/8}.
double w_decay_ratio(double beta, std::int64_t N);

}  // namespace sqdiff
