#pragma once

// Popular/unpopular edge splitting of A x B by gcd colours, the residue
// counts R_{d,f,k}, and exact checks of the counting inequalities behind
// the bound on weighted solutions of a/k - b/l = c/q.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sqdiff/arith.hpp"
#include "sqdiff/energy.hpp"
#include "sqdiff/rational.hpp"

namespace sqdiff {

struct EdgeColor {
  std::int64_t d = 1;  // gcd(k, l)
  std::int64_t f = 1;  // gcd((a l -/+ b k)/d, d), with gcd(0, d) = d
  friend auto operator<=>(const EdgeColor&, const EdgeColor&) = default;
};

// minus matches the solution equation a/k - b/l = c/q; plus is the
// alternative reading kept for experiments.
enum class ColorSign { minus, plus };

EdgeColor color_edge(const ReducedRational& x, const ReducedRational& y, ColorSign sign = ColorSign::minus);

struct Edge {
  std::size_t a;  // index into A
  std::size_t b;  // index into B
  friend bool operator==(const Edge&, const Edge&) = default;
};

// (d, f, k) -> set of residues a mod f at which (d, f) is popular.
using ResidueKey = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

struct EdgeDecomposition {
  double T = 0;
  ColorSign sign = ColorSign::minus;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::vector<EdgeColor> colors;  // row-major |A| x |B|
  std::vector<bool> popular;      // row-major |A| x |B|
  std::vector<Edge> E1;           // popular edges
  std::vector<Edge> E2;           // the rest
  std::map<ResidueKey, std::vector<std::int64_t>> popular_residues;  // sorted, distinct

  const EdgeColor& color(std::size_t a, std::size_t b) const { return colors[a * b_size + b]; }
  bool is_popular(std::size_t a, std::size_t b) const { return popular[a * b_size + b]; }
  // R_{d,f,k}; 0 for keys that never occur.
  std::int64_t R(std::int64_t d, std::int64_t f, std::int64_t k) const;
};

// Colour (d, f) is popular at a/k when #{b : C(a/k, b) = (d, f)} * tau3(k) >= T.
EdgeDecomposition split_edges(const RationalSet& A, const RationalSet& B, double T,
                              ColorSign sign = ColorSign::minus);

std::int64_t count_R(const RationalSet& A, const RationalSet& B, std::int64_t d, std::int64_t f, std::int64_t k,
                     double T, ColorSign sign = ColorSign::minus);

// F_1, F_2 restricted to the targets: x -> sum of w(k) over edges in E_i with
// a/k - b/l = x.
struct LinearSolutionCount {
  std::map<Rational, double> F1;
  std::map<Rational, double> F2;
};

LinearSolutionCount count_solutions(const RationalSet& A, const RationalSet& B, std::span<const Rational> C,
                                    const EdgeDecomposition& dec, const WeightFunction& w);

struct InequalityCheck {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;  // number of individual comparisons made
  // The comparison with the largest lhs/rhs ratio.
  double lhs = 0;
  double rhs = 0;
  std::string witness;  // first failing instance, empty when passed
};

struct DecompositionReport {
  double T = 0;
  std::int64_t L = 0;
  std::int64_t n = 0;
  double sum_A = 0;  // sum' w(k) over A
  double sum_C = 0;  // sum' w(q) tau3(q)^2 over C
  double m_log = 0;  // M_log(w tau3; L), 0 when L < 2
  double total_F1 = 0;
  double total_F2 = 0;
  double direct_total = 0;  // independent recount of the weighted solutions
  std::vector<InequalityCheck> checks;  // residue_count, unpopular_total, popular_pointwise, popular_closed,
                                        // total_closed, injectivity, partition

  bool all_passed() const;
  const InequalityCheck* find(const std::string& name) const;
};

// Throws PreconditionError when B has a denominator above L or more than n
// elements with one denominator, or when C contains 0.
DecompositionReport verify_decomposition_bounds(const RationalSet& A, const RationalSet& B,
                                                std::span<const Rational> C, double T, const WeightFunction& w,
                                                std::int64_t L, std::int64_t n, ColorSign sign = ColorSign::minus);

// T = sqrt(L n log L M_log(w tau3; L) sum_C / sum_A).  B is validated
// against L and n.  Throws InvalidArgument when sum_A = 0 or L < 2, and
// DomainError when the result is not positive.
double optimal_T(const RationalSet& A, const RationalSet& B, std::span<const Rational> C, const WeightFunction& w,
                 std::int64_t L, std::int64_t n);

// sqrt(L n log L M_log sum_C sum_A): the bound on the total weighted count
// obtained at the optimal T, up to the factor 2 from adding both halves.
double geometric_mean_bound(const RationalSet& A, std::span<const Rational> C, const WeightFunction& w,
                            std::int64_t L, std::int64_t n);

struct DyadicLevel {
  int j = 0;  // 2^j <= f(x) < 2^{j+1}
  std::vector<Rational> support;
};

// Levels of the nonzero support, in increasing j.
std::vector<DyadicLevel> dyadic_levels(const ConvolutionMap& f);

// sum over x of tau3(den x)^{2t} * (1_B^{(*j)}(x))^2.  Throws ResourceError
// when a support denominator does not fit in 64 bits.
BigInt induction_statistic(const RationalSet& B, int j, int t, const EnergyBudget& budget = {});

// induction_statistic(B, j, t) / (Q n induction_statistic(B, j - 1, t + 1)), j >= 2.
double induction_ratio(const RationalSet& B, int j, int t, const EnergyBudget& budget = {});

}  // namespace sqdiff
