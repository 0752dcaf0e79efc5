#pragma once

// Fejer kernel psi(t) = sin^2(pi t)/(pi t)^2, its Poisson-summed form, and
// the explicit-constant chain bounding sum_{b} |1^_A(b)| by the approximate
// additive energy of the frequencies.

#include <cstdint>
#include <span>

#include "sqdiff/sdf.hpp"

namespace sqdiff {

double fejer_kernel(double t);   // psi(t), psi(0) = 1
double fejer_hat(double xi);     // max(0, 1 - |xi|)

// 2N max(0, 1 - 2N ||beta||): the Poisson-summation value of
// sum_{n in Z} psi(n / 2N) e(n beta).
double fejer_poisson_closed_form(double beta, std::int64_t N);

// The same series evaluated without Poisson summation, from
// sum_{n != 0} e(n x) / n^2 = 2 pi^2 B_2({x}):
//   1 + 4N^2 [B_2({b}) - B_2({b + h})/2 - B_2({b - h})/2],  h = 1/(2N).
double fejer_series_sum(double beta, std::int64_t N);

// sum_{|n| <= M} psi(n / 2N) e(n beta), real part (the series is real).
double fejer_truncated_sum(double beta, std::int64_t N, std::int64_t M);

struct ChangReport {
  int m = 1;
  std::size_t frequencies = 0;
  double lhs = 0;             // sum_b |1^_A(b)|
  double holder_rhs = 0;      // |A|^{1-1/2m} (sum_a |F(a)|^{2m})^{1/2m}
  bool holder_ok = false;     // lhs <= holder_rhs
  double power_sum = 0;       // sum_{a in A} |F(a)|^{2m}
  double fejer_truncated = 0; // sum_{|n| <= 64N} psi(n/2N) |F(n)|^{2m}
  double fejer_series = 0;    // full series, from the pair sum with phases
  bool fejer_ok = false;      // power_sum <= 3 fejer_truncated
  double poisson_sum = 0;     // sum over 2m-tuples of 2N max(0, 1 - 2N ||s||)
  bool poisson_ok = false;    // fejer_truncated <= fejer_series <= poisson_sum
  std::uint64_t energy_wrap_half = 0;  // E_{2m}(Gamma; 1/2N), distance mod 1
  std::uint64_t energy_literal = 0;    // E_{2m}(Gamma; 1/N), literal |s|
  double chain_bound = 0;     // |A| (6/alpha)^{1/2m} E_wrap_half^{1/2m}
  bool chain_ok = false;      // lhs <= chain_bound
  double final_ratio = 0;     // lhs / (|A| alpha^{-1/2m} E_literal^{1/2m}), report only
};

// F(n) = sum_b e(theta_b + b n) with e(theta_b) 1^_A(b) = |1^_A(b)|.
ChangReport chang_check(const IntegerSet& A, std::span<const double> gamma, int m);

}  // namespace sqdiff
