#pragma once

// Absolute constants and budgets, read from flat "key = value" files.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sqdiff/energy.hpp"

namespace sqdiff {

struct ConstantsConfig {
  double C_kdef = 1.0;          // K = ceil(C alpha^-2 log N)
  double c0_nprime = 0.01;      // N' = floor(c0 nu alpha N / (K q^2))
  double c_nu = 1.0;            // nu = exp(-c log(1/alpha) / log log(1/alpha))
  double c_prime_m = 1.0;       // m = ceil(c' log log(1/alpha)), at least 2
  int discard_exponent = 6;     // arcs with mass <= N / K^6 are dropped; fixed
  std::uint64_t tuple_budget = 100'000'000;
  std::uint64_t memory_budget = 2ULL * 1024 * 1024 * 1024;
  std::uint64_t seed = 0;
  double c_sparse = 1.0 / 3.0;  // sparse when log(1/alpha) >= c_sparse log N
  double spectrum_budget = 2e9; // trig evaluations allowed for one spectrum
  std::int64_t floor_N = 32;    // iteration stops below this length
  double C_thm = 1.0;           // C in (log(mQ))^{C^m} for diagnostics

  EnergyBudget energy_budget() const { return {tuple_budget, memory_budget}; }

  // Throws InvalidArgument naming the offending key.
  void validate() const;

  // Canonical text form; parse(to_text()) round-trips.
  std::string to_text() const;

  // Unknown keys, duplicates, malformed lines and invalid values throw
  // ParseError with the line number.  Keys not present keep their defaults.
  static ConstantsConfig parse(std::istream& in);
  static ConstantsConfig parse_string(const std::string& text);
  static ConstantsConfig load(const std::string& path);

  // File named by SQDIFF_CONSTANTS if set, defaults otherwise.
  static ConstantsConfig from_environment();
};

}  // namespace sqdiff
