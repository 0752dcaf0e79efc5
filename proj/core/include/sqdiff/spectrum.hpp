#pragma once

// Major-arc spectrum of a set: arc masses int_M |g^|^2 for every a/q with
// q <= K = ceil(C alpha^-2 log N), the small-mass discard at N/K^6, and the
// dyadic (Q, B) class with the largest sum of q^{-1/2} mass^{1/2} peak.

#include <cstdint>
#include <string>
#include <vector>

#include "sqdiff/config.hpp"
#include "sqdiff/rational.hpp"
#include "sqdiff/sdf.hpp"

namespace sqdiff {

enum class Branch { sparse, increment, many_rationals };
std::string to_string(Branch b);

struct SpectrumEntry {
  ReducedRational center;
  double gamma = 0;  // arc peak of |1^_A|, in (0, 1]
  double peak = 0;   // |1^_A(gamma)|
  double mass = 0;   // int over the arc of |g^|^2
};

struct SpectrumOptions {
  // Evaluate even when alpha < N^{-1/3}; the report is then marked sparse
  // but carries the full classification.
  bool allow_sparse = false;
};

struct SpectrumReport {
  std::int64_t N = 0;
  std::size_t size = 0;
  double alpha = 0;
  Branch branch = Branch::many_rationals;
  bool sparse = false;           // alpha < N^{-1/3}
  std::int64_t K = 0;
  double discard_threshold = 0;  // N / K^6
  bool arcs_disjoint = true;
  std::size_t arcs_evaluated = 0;
  std::size_t arcs_discarded = 0;  // |Gamma_1|
  std::size_t classes = 0;         // nonempty (Q, B) classes of Gamma_2
  std::int64_t Q = 0;              // chosen class: q in [Q, 2Q)
  double B_level = 0;              // mass in [alpha^2 N / B^2, 4 alpha^2 N / B^2]
  double level_lo = 0;
  double level_hi = 0;
  double class_score = 0;          // sum over the class of q^{-1/2} mass^{1/2} peak
  double total_score = 0;          // same sum over all of Gamma_2
  double reference = 0;            // alpha |A| N^{1/2}
  std::vector<SpectrumEntry> frequencies;  // the chosen class, by value of a/q
  std::vector<double> denominator_mass;    // [q] = sum over a of the arc mass, q = 1..K
};

// Throws ResourceError when the estimated work exceeds
// constants.spectrum_budget.
SpectrumReport extract_spectrum(const IntegerSet& A, const ConstantsConfig& constants,
                                const SpectrumOptions& options = {});

// ceil(C alpha^-2 log N), at least 1.
std::int64_t k_parameter(double alpha, std::int64_t N, double C);

}  // namespace sqdiff
