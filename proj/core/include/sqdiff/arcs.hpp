#pragma once

// Major arcs M(a/q; N, K) = {g in (0,1] : ||g - a/q|| <= K/(qN)} and
// integrals over them.

#include <cstdint>
#include <optional>
#include <vector>

#include "sqdiff/fourier.hpp"
#include "sqdiff/rational.hpp"

namespace sqdiff {

class MajorArc {
 public:
  // Throws InvalidArgument for K <= 0 or N < 1.
  MajorArc(ReducedRational center, double K, std::int64_t N);

  const ReducedRational& center() const noexcept { return center_; }
  double K() const noexcept { return K_; }
  std::int64_t N() const noexcept { return N_; }
  // Half width min(K/(qN), 1/2); the arc is [c - w, c + w] read mod 1.
  double half_width() const noexcept { return half_width_; }
  double lo() const noexcept { return center_.to_double() - half_width_; }
  double hi() const noexcept { return center_.to_double() + half_width_; }
  bool contains(double gamma) const;

 private:
  ReducedRational center_;
  double K_;
  std::int64_t N_;
  double half_width_;
};

struct ArcOverlap {
  ReducedRational first;
  ReducedRational second;
};

// Exact-integer test of pairwise disjointness for arcs sharing K and N:
// a/q and b/r are disjoint iff N * |a r - b q|_{mod qr} > K (q + r).  Only
// neighbours in circular order need checking.
std::optional<ArcOverlap> find_arc_overlap(const std::vector<MajorArc>& arcs);

// All arcs with q <= Qmax.  When 2K^2 < N their disjointness is checked and
// a failure throws std::logic_error.
std::vector<MajorArc> major_arcs(std::int64_t Qmax, double K, std::int64_t N);

enum class ArcIntegrand { g_squared, w_squared, triple };

struct QuadratureOptions {
  double rel_tol = 1e-6;
  double abs_tol = 0;
  std::size_t initial_intervals = 128;  // 129 nodes
  double nodes_per_unit_bandwidth = 8;  // intervals >= this * width * N
  std::size_t max_intervals = std::size_t{1} << 22;
};

struct QuadratureResult {
  double value = 0;
  std::size_t intervals = 0;
  double last_change = 0;
  bool converged = false;
};

// Composite Simpson over [lo, hi] with interval doubling until successive
// estimates agree to rel_tol.
QuadratureResult arc_integral(const IntegerSet& A, const MajorArc& arc, ArcIntegrand integrand,
                              const QuadratureOptions& options = {});
QuadratureResult interval_integral(const IntegerSet& A, double lo, double hi, ArcIntegrand integrand,
                                   const QuadratureOptions& options = {});

// int_0^1 |g^|^2 by the same quadrature.
QuadratureResult full_circle_g_squared(const IntegerSet& A, const QuadratureOptions& options = {});

// Closed-form arc masses int |g^|^2 over [c - w, c + w] from the
// autocorrelation r(h) = sum_x g(x) g(x + h):
//
//   mass = 2w r(0) + 2 sum_{h >= 1} r(h) cos(2 pi h c) sin(2 pi h w) / (pi h)
class ArcMassEngine {
 public:
  explicit ArcMassEngine(const IntegerSet& A);

  std::int64_t N() const noexcept { return N_; }
  const std::vector<double>& autocorrelation() const noexcept { return r_; }
  // sum_x g(x)^2 = alpha (1 - alpha) N.
  double total_mass() const noexcept { return r_.empty() ? 0.0 : r_[0]; }

  double mass(double center, double half_width) const;
  double mass(const MajorArc& arc) const { return mass(arc.center().to_double(), arc.half_width()); }
  // Masses of M(a/q; N, K) for every a coprime to q, in increasing a.
  std::vector<double> masses_for_denominator(std::int64_t q, double K) const;

 private:
  std::int64_t N_;
  std::vector<double> r_;  // r(0..N-1)
};

struct ArcPeak {
  double gamma = 0;
  double value = 0;  // |1^_A(gamma)|
};

// Argmax of |1^_A| on the arc: best of a 65-point grid refined by golden
// section on the neighbouring grid cells.
ArcPeak arc_peak(const TrigPoly& indicator, const MajorArc& arc);

}  // namespace sqdiff
