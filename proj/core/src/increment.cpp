#include "sqdiff/increment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sqdiff/energy.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/parallel.hpp"

namespace sqdiff {

double nu_of_alpha(double alpha, double c) {
  if (!(alpha > 0) || !(alpha < std::exp(-1.0))) throw DomainError("nu needs 0 < alpha < 1/e");
  const double L = std::log(1.0 / alpha);
  return std::exp(-c * L / std::log(L));
}

double theorem_bound(std::int64_t N, double c) {
  if (N < 2) throw DomainError("theorem bound needs N >= 2");
  const double l1 = std::log(static_cast<double>(N));
  if (!(l1 > 1)) throw DomainError("theorem bound needs log log log N > 0");
  const double l3 = std::log(std::log(l1));
  if (!(l3 > 0)) throw DomainError("theorem bound needs log log log N > 0");
  return std::exp(std::log(static_cast<double>(N)) - c * l3 * std::log(l1));
}

IncrementOptions IncrementOptions::from(const ConstantsConfig& constants) {
  IncrementOptions o;
  o.c0 = constants.c0_nprime;
  return o;
}

namespace {

// below[v] = #{a in A : a <= v, a = v mod step}, for v in [1, N].
std::vector<std::uint32_t> residue_prefix(const IntegerSet& A, std::int64_t step) {
  const auto N = A.N();
  std::vector<std::uint32_t> below(static_cast<std::size_t>(N) + 1, 0);
  for (const auto a : A) below[static_cast<std::size_t>(a)] = 1;
  for (std::int64_t v = step + 1; v <= N; ++v) {
    below[static_cast<std::size_t>(v)] += below[static_cast<std::size_t>(v - step)];
  }
  return below;
}

// Number of a in A with a = lo mod step and lo <= a <= hi.
std::uint64_t class_count(const std::vector<std::uint32_t>& below, std::int64_t N, std::int64_t step, std::int64_t lo,
                          std::int64_t hi) {
  if (hi > N) hi -= step * ((hi - N + step - 1) / step);
  if (lo < 1) lo += step * ((1 - lo + step - 1) / step);
  if (lo > hi) return 0;
  const std::uint64_t top = below[static_cast<std::size_t>(hi)];
  const std::uint64_t bottom = lo - step >= 1 ? below[static_cast<std::size_t>(lo - step)] : 0;
  return top - bottom;
}

}  // namespace

std::uint64_t progression_count(const IntegerSet& A, std::int64_t q, std::int64_t N_prime, std::int64_t x) {
  const std::int64_t step = q * q;
  std::uint64_t count = 0;
  for (std::int64_t n = 1; n <= N_prime; ++n) {
    if (A.contains(step * n - x)) ++count;
  }
  return count;
}

IncrementResult find_increment(const IntegerSet& A, std::int64_t q, double K, double nu,
                               const IncrementOptions& options) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  if (!(K >= 1)) throw InvalidArgument("K must be >= 1");
  if (!(nu > 0 && nu <= 1)) throw InvalidArgument("nu must lie in (0, 1]");
  if (!(options.c0 > 0)) throw InvalidArgument("c0 must be positive");
  if (A.empty()) throw InvalidArgument("find_increment needs a nonempty set");

  IncrementResult res;
  res.q = q;
  res.nu = nu;
  res.K = K;
  const std::int64_t N = A.N();
  const double Nd = static_cast<double>(N);
  res.alpha = A.density();
  const double qd = static_cast<double>(q);
  const double np = std::floor(options.c0 * nu * res.alpha * Nd / (K * qd * qd));
  if (!(np >= 1)) {
    throw ScaleError("N' = floor(c0 nu alpha N / (K q^2)) < 1 at N = " + std::to_string(N) +
                     ", q = " + std::to_string(q));
  }
  if (q > 3'000'000'000LL || np * qd * qd > 4e18) throw ScaleError("progression q^2 N' does not fit in 64 bits");
  res.N_prime = static_cast<std::int64_t>(np);
  res.phase_bound = qd * np * K / Nd;

  res.hypothesis_target = nu * res.alpha * static_cast<double>(A.size());
  const auto centers = rationals_with_denominator(q);
  const ArcMassEngine engine(A);
  for (const double m : engine.masses_for_denominator(q, K)) res.hypothesis_mass_closed += m;
  if (options.verify_hypothesis) {
    for (const auto& c : centers) {
      const auto r = arc_integral(A, MajorArc(c, K, N), ArcIntegrand::g_squared, options.quadrature);
      res.hypothesis_mass += r.value;
      res.hypothesis_converged = res.hypothesis_converged && r.converged;
    }
  } else {
    res.hypothesis_mass = res.hypothesis_mass_closed;
  }
  res.hypothesis_ok = res.hypothesis_mass >= res.hypothesis_target;

  // count(x) = #{n in [N'] : q^2 n - x in A}; the a run over one residue
  // class mod q^2 between q^2 - x and q^2 N' - x.
  const std::int64_t step = q * q;
  const auto below = residue_prefix(A, step);
  const std::int64_t x_lo = step - N;
  const std::int64_t x_hi = step * res.N_prime - 1;
  const auto total = static_cast<std::size_t>(x_hi - x_lo + 1);
  res.shifts_scanned = total;
  struct Best {
    std::uint64_t count = 0;
    std::int64_t x = 0;
    bool any = false;
  };
  std::vector<Best> best(std::max(1u, thread_count()));
  parallel_for(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Best b;
    for (std::size_t i = begin; i < end; ++i) {
      const std::int64_t x = x_lo + static_cast<std::int64_t>(i);
      const auto c = class_count(below, N, step, step - x, step * res.N_prime - x);
      if (!b.any || c > b.count) b = {c, x, true};
    }
    best[chunk] = b;
  });
  Best winner;
  for (const auto& b : best) {
    if (b.any && (!winner.any || b.count > winner.count || (b.count == winner.count && b.x < winner.x))) winner = b;
  }
  res.x = winner.x;
  res.best_count = winner.count;

  std::vector<std::int64_t> elems;
  elems.reserve(winner.count);
  for (std::int64_t n = 1; n <= res.N_prime; ++n) {
    if (A.contains(step * n - res.x)) elems.push_back(n);
  }
  res.A_prime = IntegerSet::from_elements(res.N_prime, std::move(elems));
  res.alpha_prime = res.A_prime.density();
  // Exact: |A'| / N' >= (1 + nu/20) |A| / N  <=>  20 |A'| N >= (20 + nu) |A| N'.
  const long double lhs = 20.0L * static_cast<long double>(res.A_prime.size()) * static_cast<long double>(N);
  const long double rhs = (20.0L + static_cast<long double>(nu)) * static_cast<long double>(A.size()) *
                          static_cast<long double>(res.N_prime);
  res.found = lhs >= rhs;
  return res;
}

namespace {

ManyRationalsBound many_rationals_bound(const SpectrumReport& s, double nu, const ConstantsConfig& constants) {
  ManyRationalsBound b;
  const double alpha = s.alpha;
  const double L = std::log(1.0 / alpha);
  if (L > 1) b.m = std::max(2, static_cast<int>(std::ceil(constants.c_prime_m * std::log(L))));
  const double m = b.m;
  const double Q = static_cast<double>(std::max<std::int64_t>(1, s.Q));
  const double B = s.B_level;
  const double logmQ = std::log(m * Q);
  // (log mQ)^{C^m}: log of it is C^m log log mQ, undefined when log mQ <= 0.
  const double loglog = logmQ > 0 ? std::log(logmQ) : -INFINITY;
  b.log_lhs = m * std::log(m) + std::pow(constants.C_thm, m) * loglog + m * std::log(nu * B * B * Q);
  b.log_rhs = std::log(alpha) + 2.0 * m * (std::log(B) + 0.5 * std::log(Q) - std::log(L));
  b.contradiction = b.log_lhs < b.log_rhs;
  b.separation = 0.5 * std::pow(Q, -2.0 * m);
  b.class_size = s.frequencies.size();
  if (s.frequencies.empty()) return b;
  std::vector<ReducedRational> centres;
  for (const auto& f : s.frequencies) centres.push_back(f.center);
  const auto set = RationalSet::from_elements(centres);
  try {
    const auto e = energy(set, b.m, EnergyBackend::mitm, constants.energy_budget());
    b.class_energy = e;
    const double n = static_cast<double>(std::max<std::size_t>(1, set.max_per_denominator()));
    // Class denominators lie below 2Q, the cap in (Qn)^m.
    b.energy_ratio = static_cast<double>(e) / std::pow(2.0 * Q * n, m);
  } catch (const ResourceError&) {
  }
  return b;
}

}  // namespace

TrichotomyResult trichotomy(const IntegerSet& A, double nu, const ConstantsConfig& constants) {
  TrichotomyResult res;
  res.nu = nu;
  const double Nd = static_cast<double>(A.N());
  const double alpha = A.density();
  if (A.empty() || alpha < std::pow(Nd, -1.0 / 3.0) || std::log(1.0 / alpha) >= constants.c_sparse * std::log(Nd)) {
    res.branch = Branch::sparse;
    return res;
  }
  res.spectrum = extract_spectrum(A, constants);
  const SpectrumReport& s = *res.spectrum;
  if (s.sparse) {
    res.branch = Branch::sparse;
    return res;
  }
  const double Kd = static_cast<double>(s.K);
  const double target = nu * alpha * static_cast<double>(A.size());
  const auto mass_of = [&](std::int64_t q) { return s.denominator_mass[static_cast<std::size_t>(q)]; };
  const auto by_mass = [&](std::int64_t x, std::int64_t y) {
    return mass_of(x) != mass_of(y) ? mass_of(x) > mass_of(y) : x < y;
  };

  std::map<std::int64_t, std::size_t> per_q;
  for (const auto& f : s.frequencies) ++per_q[f.center.den()];
  for (const auto& [q, count] : per_q) {
    if (static_cast<double>(count) > nu * s.B_level * s.B_level) res.violators.push_back(q);
  }
  std::sort(res.violators.begin(), res.violators.end(), by_mass);
  std::vector<std::int64_t> heavy;
  for (std::int64_t q = 1; q <= s.K; ++q) {
    if (mass_of(q) >= target) heavy.push_back(q);
  }
  std::sort(heavy.begin(), heavy.end(), by_mass);
  std::set<std::int64_t> seen;
  for (const auto q : res.violators) {
    if (seen.insert(q).second) res.candidates.push_back(q);
  }
  for (const auto q : heavy) {
    if (seen.insert(q).second) res.candidates.push_back(q);
  }

  const auto options = IncrementOptions::from(constants);
  for (const auto q : res.candidates) {
    IncrementResult r;
    try {
      r = find_increment(A, q, Kd, nu, options);
    } catch (const ScaleError&) {
      continue;
    }
    if (r.found && r.hypothesis_ok) {
      res.branch = Branch::increment;
      res.increment = std::move(r);
      return res;
    }
    if (!res.increment || r.alpha_prime > res.increment->alpha_prime) res.increment = std::move(r);
  }
  if (!res.candidates.empty()) {
    res.branch = Branch::increment;
    return res;
  }
  res.branch = Branch::many_rationals;
  res.bound = many_rationals_bound(s, nu, constants);
  return res;
}

IterationLog iterate(const IntegerSet& A, const ConstantsConfig& constants) {
  IterationLog log;
  log.N0 = A.N();
  log.alpha0 = A.density();
  if (A.empty()) {
    log.termination = "sparse";
    return log;
  }
  try {
    log.nu = nu_of_alpha(log.alpha0, constants.c_nu);
  } catch (const DomainError&) {
    log.termination = "nu-domain";
    return log;
  }
  const double L = std::log(1.0 / log.alpha0);
  log.step_cap = static_cast<std::size_t>(std::ceil(L / std::log1p(log.nu / 20.0))) + 1;
  log.step_bound = 20.0 * L / log.nu + 1.0;
  const double root = std::sqrt(static_cast<double>(log.N0));
  const bool input_sdf = is_sdf(A);
  log.sdf_preserved = input_sdf;

  IntegerSet current = A;
  for (std::size_t t = 0;; ++t) {
    if (static_cast<double>(current.N()) < root) {
      log.termination = "below-sqrt";
      break;
    }
    if (current.N() < constants.floor_N) {
      log.termination = "below-floor";
      break;
    }
    IterationStep step;
    step.t = t;
    step.N = current.N();
    step.size = current.size();
    step.alpha = current.density();
    step.nu = log.nu;
    step.sdf = is_sdf(current);
    if (input_sdf && !step.sdf) log.sdf_preserved = false;
    if (t >= log.step_cap) {
      log.steps.push_back(step);
      log.termination = "step-cap";
      break;
    }
    TrichotomyResult tri;
    try {
      tri = trichotomy(current, log.nu, constants);
    } catch (const ResourceError&) {
      log.steps.push_back(step);
      log.termination = "resource";
      break;
    }
    step.branch = tri.branch;
    step.candidates = tri.candidates.size();
    if (tri.spectrum) step.K = static_cast<double>(tri.spectrum->K);
    const bool accepted = tri.branch == Branch::increment && tri.increment && tri.increment->found &&
                          tri.increment->hypothesis_ok;
    if (accepted) {
      step.q = tri.increment->q;
      step.x = tri.increment->x;
    }
    log.steps.push_back(step);
    if (tri.branch == Branch::sparse) {
      log.termination = "sparse";
      break;
    }
    if (tri.branch == Branch::many_rationals) {
      log.termination = "many-rationals";
      break;
    }
    if (!accepted) {
      log.termination = "no-increment";
      break;
    }
    const double before = current.density();
    current = std::move(tri.increment->A_prime);
    log.steps.back().N_next = current.N();
    log.steps.back().size_next = current.size();
    log.steps.back().alpha_next = current.density();
    ++log.increments;
    if (current.density() < (1.0 + log.nu / 20.0) * before * (1.0 - 1e-12)) log.monotone = false;
  }
  return log;
}

}  // namespace sqdiff
