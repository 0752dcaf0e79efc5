#pragma once

// 2m-fold additive energy
//
//   E_{2m}(B) = #{(b_1..b_2m) in B^{2m} : b_1+..+b_m = b_{m+1}+..+b_{2m}}
//
// with three independent exact backends, the approximate energy
// E_{2m}(G; delta) over real frequencies, convolution powers of 1_B and the
// bound evaluators that go with them.
//
// All counting is over exact Rationals; nothing is hashed as a float.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqdiff/rational.hpp"

namespace sqdiff {

struct EnergyBudget {
  std::uint64_t tuple_budget = 100'000'000;            // max |B|^{2m} for brute force
  std::uint64_t memory_budget = 2ULL * 1024 * 1024 * 1024;  // bytes for sum tables
};

enum class EnergyBackend { brute, mitm, convolution };

std::string to_string(EnergyBackend b);
EnergyBackend parse_energy_backend(const std::string& name);  // brute|mitm|conv

// Depth-first enumeration of all 2m-tuples with a running exact alternating
// sum.  Throws ResourceError when |B|^{2m} exceeds the tuple budget.
std::uint64_t energy_brute(std::span<const Rational> values, int m, const EnergyBudget& budget = {});
std::uint64_t energy_brute(const RationalSet& B, int m, const EnergyBudget& budget = {});

// Multiset of all |B|^m ordered m-fold sums, energy = sum_s c(s)^2.
std::uint64_t energy_mitm(std::span<const Rational> values, int m, const EnergyBudget& budget = {});
std::uint64_t energy_mitm(const RationalSet& B, int m, const EnergyBudget& budget = {});

// 1_B^{(*j)}: x -> number of ordered j-tuples of B summing to x, nonzero
// entries only, ordered by x.
using ConvolutionMap = std::map<Rational, std::uint64_t>;

ConvolutionMap convolution_power(std::span<const Rational> values, int j, const EnergyBudget& budget = {});
ConvolutionMap convolution_power(const RationalSet& B, int j, const EnergyBudget& budget = {});

// sum_x f(x)^2; equals E_{2m}(B) for f = 1_B^{(*m)}.
std::uint64_t energy_from_convolution(const ConvolutionMap& f);

std::uint64_t energy(const RationalSet& B, int m, EnergyBackend backend, const EnergyBudget& budget = {});

struct ApproxEnergyOptions {
  // false: |alternating sum| <= delta on the real line (literal reading).
  // true:  distance to the nearest integer <= delta.
  bool wrap_mod_one = false;
};

// Exact mode: rational frequencies and rational delta.
std::uint64_t energy_approx(std::span<const Rational> freqs, int m, const Rational& delta,
                            ApproxEnergyOptions options = {}, const EnergyBudget& budget = {});

inline constexpr double kApproxEnergyTolerance = 1e-12;

// Floating mode: |sum| <= delta + 1e-12.
std::uint64_t energy_approx(std::span<const double> freqs, int m, double delta, ApproxEnergyOptions options = {},
                            const EnergyBudget& budget = {});

// (log(mQ))^{C^m} (Qn)^m, exactly as written.  Needs Q, m >= 2, n >= 1, C > 0.
double theorem_bound_rhs(std::int64_t Q, std::int64_t n, int m, double C);

// m! (size - m)^m from diagonal tuples; 0 when size <= m.
std::uint64_t diagonal_lower(std::size_t size, int m);

// B_i = B cap [(i-1)/2m, i/2m) for i = 1..2m.  The value 1 lies in no
// half-open interval and is placed in the last class, whose interval is
// therefore closed on the right.
std::vector<RationalSet> split_intervals(const RationalSet& B, int m);

struct EnergyReport {
  int m = 0;
  std::uint64_t energy = 0;
  std::uint64_t diagonal_lower = 0;
  std::optional<double> theorem_rhs;  // absent when Q < 2 or m < 2
  EnergyBackend backend = EnergyBackend::brute;
  // Context for theorem_rhs: Q = denominator cap, n = max per-denominator count.
  std::int64_t Q = 0;
  std::int64_t n = 0;
  double C = 1;
};

EnergyReport energy_report(const RationalSet& B, int m, EnergyBackend backend, double C,
                           const EnergyBudget& budget = {});

}  // namespace sqdiff
