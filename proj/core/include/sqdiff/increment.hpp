#pragma once

// Density increment on progressions of square difference, the
// sparse / increment / many-rationals dispatcher and the iteration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqdiff/arcs.hpp"
#include "sqdiff/config.hpp"
#include "sqdiff/sdf.hpp"
#include "sqdiff/spectrum.hpp"

namespace sqdiff {

// exp(-c log(1/alpha) / log log(1/alpha)); DomainError unless 0 < alpha < 1/e.
double nu_of_alpha(double alpha, double c);

// N / (log N)^{c log log log N}; DomainError when log log log N <= 0.
double theorem_bound(std::int64_t N, double c);

struct IncrementOptions {
  double c0 = 0.01;                 // N' = floor(c0 nu alpha N / (K q^2))
  bool verify_hypothesis = true;    // Simpson arc integrals over Q_{=q}
  QuadratureOptions quadrature{};

  static IncrementOptions from(const ConstantsConfig& constants);
};

struct IncrementResult {
  bool found = false;               // alpha_prime >= (1 + nu/20) alpha
  std::int64_t x = 0;               // A' = {n in [N'] : q^2 n - x in A}
  std::int64_t q = 1;
  std::int64_t N_prime = 0;
  IntegerSet A_prime;
  double alpha = 0;
  double alpha_prime = 0;
  double nu = 0;
  double K = 0;
  std::uint64_t best_count = 0;     // |(q^2 [N']) cap (A + x)|
  std::uint64_t shifts_scanned = 0;
  // sum over a/q in Q_{=q} of int_M |g^|^2, by quadrature and in closed form.
  double hypothesis_mass = 0;
  double hypothesis_mass_closed = 0;
  double hypothesis_target = 0;     // nu alpha |A|
  bool hypothesis_ok = false;
  bool hypothesis_converged = true;
  double phase_bound = 0;           // q N' K / N; at most 1/(4 pi) for the phase argument
};

// Exhaustive over x in [q^2 - N, q^2 N' - 1], the shifts for which the
// progression meets [N]; ties go to the smallest x.  Throws ScaleError when
// N' < 1 and InvalidArgument for q < 1, K < 1 or nu outside (0, 1].
IncrementResult find_increment(const IntegerSet& A, std::int64_t q, double K, double nu,
                               const IncrementOptions& options = {});

// |(q^2 [N']) cap (A + x)| for one shift, by direct recount.
std::uint64_t progression_count(const IntegerSet& A, std::int64_t q, std::int64_t N_prime, std::int64_t x);

// Both sides of the many-rationals contradiction, in logs:
//   m^m (log mQ)^{C^m} (nu B^2 Q)^m   versus   alpha (B Q^{1/2} / log(1/alpha))^{2m}
struct ManyRationalsBound {
  int m = 2;                        // max(2, ceil(c' log log(1/alpha)))
  double log_lhs = 0;
  double log_rhs = 0;
  bool contradiction = false;       // log_lhs < log_rhs
  double separation = 0;            // Q^{-2m} / 2
  std::size_t class_size = 0;
  std::optional<std::uint64_t> class_energy;  // E_{2m} of the class centres, if affordable
  std::optional<double> energy_ratio;         // class_energy / (Q n)^m
};

struct TrichotomyResult {
  Branch branch = Branch::many_rationals;
  double nu = 0;
  std::optional<SpectrumReport> spectrum;
  std::vector<std::int64_t> candidates;      // denominators tried, in order
  std::vector<std::int64_t> violators;       // class counts above nu B^2
  std::optional<IncrementResult> increment;  // the accepted one, or the best failure
  std::optional<ManyRationalsBound> bound;
};

// Sparse when alpha < N^{-1/3} or log(1/alpha) >= c_sparse log N.
// Otherwise the spectrum is extracted and find_increment is tried at every
// denominator whose class count exceeds nu B^2, then at every denominator
// carrying arc mass >= nu alpha |A|.  An increment is accepted only when
// found and its hypothesis holds.  With no candidates the branch is
// many-rationals.  ResourceError from the spectrum propagates.
TrichotomyResult trichotomy(const IntegerSet& A, double nu, const ConstantsConfig& constants);

struct IterationStep {
  std::size_t t = 0;
  std::int64_t N = 0;
  std::size_t size = 0;
  double alpha = 0;
  std::optional<Branch> branch;  // empty when the step cap stopped the loop first
  double nu = 0;
  std::int64_t q = 0;  // 0 unless an increment was taken
  std::int64_t x = 0;
  double K = 0;
  std::size_t candidates = 0;
  bool sdf = true;
  // State after the increment, when one was taken.
  std::int64_t N_next = 0;
  std::size_t size_next = 0;
  double alpha_next = 0;
};

struct IterationLog {
  std::vector<IterationStep> steps;
  std::string termination;  // sparse, many-rationals, no-increment, below-sqrt, below-floor,
                            // nu-domain, resource, step-cap
  std::int64_t N0 = 0;
  double alpha0 = 0;
  double nu = 0;
  std::size_t increments = 0;
  std::size_t step_cap = 0;       // ceil(log(1/alpha) / log(1 + nu/20)) + 1
  double step_bound = 0;          // 20 log(1/alpha) / nu + 1
  bool monotone = true;           // alpha_{t+1} >= (1 + nu/20) alpha_t at every increment
  bool sdf_preserved = true;
};

// nu is fixed from the starting density.
IterationLog iterate(const IntegerSet& A, const ConstantsConfig& constants);

}  // namespace sqdiff
