#include "sqdiff/energy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sqdiff/error.hpp"
#include "sqdiff/parallel.hpp"

namespace sqdiff {

namespace {

// Approximate bytes per hashed or ordered sum entry (node, key, count).
constexpr std::uint64_t kBytesPerEntry = 64;

void check_m(int m) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
}

// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) return UINT64_MAX;
  }
  return out;
}

void check_table(std::size_t size, int m, const EnergyBudget& budget, const char* what) {
  const std::uint64_t entries = saturating_pow(size, m);
  if (entries == UINT64_MAX || entries > budget.memory_budget / kBytesPerEntry) {
    throw ResourceError(std::string(what) + ": " + std::to_string(size) + "^" + std::to_string(m) +
                        " sums exceed the memory budget");
  }
}

// Calls visit(sum) for every ordered m-tuple, in odometer order.
template <typename T, typename Visit>
void for_each_msum(std::span<const T> values, int m, const T& start, Visit&& visit) {
  std::vector<T> partial(static_cast<std::size_t>(m) + 1, start);
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  const std::size_t n = values.size();
  if (n == 0) return;
  for (int d = 0; d < m; ++d) partial[d + 1] = partial[d] + values[0];
  while (true) {
    visit(partial[m]);
    int d = m - 1;
    while (d >= 0 && ++idx[d] == n) {
      idx[d] = 0;
      --d;
    }
    if (d < 0) return;
    for (int e = d; e < m; ++e) partial[e + 1] = partial[e] + values[idx[e]];
  }
}

template <typename T>
std::vector<T> all_msums(std::span<const T> values, int m, const T& zero) {
  std::vector<T> out;
  out.reserve(saturating_pow(values.size(), m));
  for_each_msum(values, m, zero, [&](const T& s) { out.push_back(s); });
  return out;
}

// Ordered pairs (s, t) of sorted sums with |s - t| <= delta, or with the
// distance to the nearest integer <= delta when wrapping.
template <typename T, typename Less>
std::uint64_t count_close_pairs(std::vector<T> sums, const T& delta, bool wrap, const T& one, Less less) {
  std::sort(sums.begin(), sums.end(), less);
  std::uint64_t total = 0;
  const auto count_in = [&](const T& lo, const T& hi) -> std::uint64_t {
    const auto first = std::lower_bound(sums.begin(), sums.end(), lo, less);
    const auto last = std::upper_bound(sums.begin(), sums.end(), hi, less);
    return last > first ? static_cast<std::uint64_t>(last - first) : 0;
  };
  for (const T& s : sums) {
    total += count_in(s - delta, s + delta);
    if (wrap) {
      total += count_in(s - delta - one, s + delta - one);
      total += count_in(s - delta + one, s + delta + one);
    }
  }
  return total;
}

}  // namespace

std::string to_string(EnergyBackend b) {
  switch (b) {
    case EnergyBackend::brute:
      return "brute";
    case EnergyBackend::mitm:
      return "mitm";
    case EnergyBackend::convolution:
      return "conv";
  }
  return "?";
}

EnergyBackend parse_energy_backend(const std::string& name) {
  if (name == "brute") return EnergyBackend::brute;
  if (name == "mitm") return EnergyBackend::mitm;
  if (name == "conv" || name == "convolution") return EnergyBackend::convolution;
  throw InvalidArgument("unknown energy backend '" + name + "'");
}

std::uint64_t energy_brute(std::span<const Rational> values, int m, const EnergyBudget& budget) {
  check_m(m);
  const std::size_t n = values.size();
  if (n == 0) return 0;
  const std::uint64_t tuples = saturating_pow(n, 2 * m);
  if (tuples > budget.tuple_budget) {
    throw ResourceError("brute force needs " + std::to_string(n) + "^" + std::to_string(2 * m) +
                        " tuples, over the tuple budget; use the mitm backend");
  }
  const int depth = 2 * m;
  std::vector<std::uint64_t> partial_counts(thread_count(), 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    // Running alternating sum: + for the first m positions, - for the rest.
    std::vector<Rational> partial(static_cast<std::size_t>(depth) + 1);
    std::vector<std::size_t> idx(static_cast<std::size_t>(depth), 0);
    std::uint64_t count = 0;
    for (std::size_t first = begin; first < end; ++first) {
      idx[0] = first;
      const auto step = [&](int d) {
        partial[d + 1] = d < m ? partial[d] + values[idx[d]] : partial[d] - values[idx[d]];
      };
      step(0);
      for (int d = 1; d < depth; ++d) {
        idx[d] = 0;
        step(d);
      }
      while (true) {
        if (partial[depth].is_zero()) ++count;
        int d = depth - 1;
        while (d >= 1 && ++idx[d] == n) {
          idx[d] = 0;
          --d;
        }
        if (d < 1) break;
        for (int e = d; e < depth; ++e) step(e);
      }
    }
    partial_counts[chunk] = count;
  });
  std::uint64_t total = 0;
  for (auto c : partial_counts) total += c;
  return total;
}

std::uint64_t energy_brute(const RationalSet& B, int m, const EnergyBudget& budget) {
  const auto values = B.values();
  return energy_brute(std::span<const Rational>(values), m, budget);
}

std::uint64_t energy_mitm(std::span<const Rational> values, int m, const EnergyBudget& budget) {
  check_m(m);
  if (values.empty()) return 0;
  check_table(values.size(), m, budget, "mitm");
  std::unordered_map<Rational, std::uint64_t, RationalHash> counts;
  for_each_msum(values, m, Rational(0), [&](const Rational& s) { ++counts[s]; });
  std::uint64_t total = 0;
  for (const auto& [sum, c] : counts) total += c * c;
  return total;
}

std::uint64_t energy_mitm(const RationalSet& B, int m, const EnergyBudget& budget) {
  const auto values = B.values();
  return energy_mitm(std::span<const Rational>(values), m, budget);
}

ConvolutionMap convolution_power(std::span<const Rational> values, int j, const EnergyBudget& budget) {
  if (j < 1) throw InvalidArgument("convolution power j must be >= 1");
  ConvolutionMap current;
  for (const auto& v : values) ++current[v];
  for (int step = 1; step < j; ++step) {
    if (current.size() * values.size() > budget.memory_budget / kBytesPerEntry) {
      throw ResourceError("convolution power exceeds the memory budget");
    }
    ConvolutionMap next;
    for (const auto& [x, c] : current) {
      for (const auto& v : values) next[x + v] += c;
    }
    current = std::move(next);
  }
  return current;
}

ConvolutionMap convolution_power(const RationalSet& B, int j, const EnergyBudget& budget) {
  const auto values = B.values();
  return convolution_power(std::span<const Rational>(values), j, budget);
}

std::uint64_t energy_from_convolution(const ConvolutionMap& f) {
  std::uint64_t total = 0;
  for (const auto& [x, c] : f) total += c * c;
  return total;
}

std::uint64_t energy(const RationalSet& B, int m, EnergyBackend backend, const EnergyBudget& budget) {
  switch (backend) {
    case EnergyBackend::brute:
      return energy_brute(B, m, budget);
    case EnergyBackend::mitm:
      return energy_mitm(B, m, budget);
    case EnergyBackend::convolution:
      return energy_from_convolution(convolution_power(B, m, budget));
  }
  throw InvalidArgument("unknown energy backend");
}

std::uint64_t energy_approx(std::span<const Rational> freqs, int m, const Rational& delta, ApproxEnergyOptions options,
                            const EnergyBudget& budget) {
  check_m(m);
  if (delta.sign() < 0) throw InvalidArgument("delta must be >= 0");
  if (freqs.empty()) return 0;
  check_table(freqs.size(), m, budget, "energy_approx");
  const std::uint64_t n_sums = saturating_pow(freqs.size(), m);
  if (options.wrap_mod_one && delta >= Rational::fraction(1, 2)) return n_sums * n_sums;
  auto sums = all_msums(freqs, m, Rational(0));
  if (options.wrap_mod_one) {
    for (auto& s : sums) s = s.frac();
  }
  return count_close_pairs(std::move(sums), delta, options.wrap_mod_one, Rational(1), std::less<Rational>());
}

std::uint64_t energy_approx(std::span<const double> freqs, int m, double delta, ApproxEnergyOptions options,
                            const EnergyBudget& budget) {
  check_m(m);
  if (!(delta >= 0)) throw InvalidArgument("delta must be >= 0");
  if (freqs.empty()) return 0;
  check_table(freqs.size(), m, budget, "energy_approx");
  const std::uint64_t n_sums = saturating_pow(freqs.size(), m);
  if (options.wrap_mod_one && delta >= 0.5) return n_sums * n_sums;
  auto sums = all_msums(freqs, m, 0.0);
  if (options.wrap_mod_one) {
    for (auto& s : sums) s -= std::floor(s);
  }
  return count_close_pairs(std::move(sums), delta + kApproxEnergyTolerance, options.wrap_mod_one, 1.0,
                           std::less<double>());
}

double theorem_bound_rhs(std::int64_t Q, std::int64_t n, int m, double C) {
  if (Q < 2 || m < 2 || n < 1 || !(C > 0)) throw InvalidArgument("theorem_bound_rhs needs Q, m >= 2, n >= 1, C > 0");
  const double log_mq = std::log(static_cast<double>(m) * static_cast<double>(Q));
  return std::pow(log_mq, std::pow(C, m)) * std::pow(static_cast<double>(Q) * static_cast<double>(n), m);
}

std::uint64_t diagonal_lower(std::size_t size, int m) {
  check_m(m);
  if (size <= static_cast<std::size_t>(m)) return 0;
  std::uint64_t out = 1;
  for (int i = 2; i <= m; ++i) out *= static_cast<std::uint64_t>(i);
  const std::uint64_t p = saturating_pow(size - static_cast<std::size_t>(m), m);
  if (p == UINT64_MAX || __builtin_mul_overflow(out, p, &out)) throw OverflowError("diagonal bound overflows 64 bits");
  return out;
}

std::vector<RationalSet> split_intervals(const RationalSet& B, int m) {
  check_m(m);
  const std::int64_t parts = 2 * static_cast<std::int64_t>(m);
  std::vector<std::vector<ReducedRational>> classes(static_cast<std::size_t>(parts));
  for (const auto& b : B) {
    // floor(2m * a / q); the value 1 maps to parts and is folded into the last class.
    const auto i = static_cast<std::int64_t>(static_cast<__int128>(parts) * b.num() / b.den());
    classes[static_cast<std::size_t>(std::min(i, parts - 1))].push_back(b);
  }
  std::vector<RationalSet> out;
  out.reserve(classes.size());
  for (auto& c : classes) out.push_back(RationalSet::from_elements(std::move(c), B.denominator_cap(), B.per_den_cap()));
  return out;
}

EnergyReport energy_report(const RationalSet& B, int m, EnergyBackend backend, double C, const EnergyBudget& budget) {
  EnergyReport r;
  r.m = m;
  r.backend = backend;
  r.C = C;
  r.energy = energy(B, m, backend, budget);
  r.diagonal_lower = diagonal_lower(B.size(), m);
  r.Q = B.denominator_cap();
  r.n = std::max<std::int64_t>(1, B.max_per_denominator());
  if (r.Q >= 2 && m >= 2 && C > 0) r.theorem_rhs = theorem_bound_rhs(r.Q, r.n, m, C);
  return r;
}

}  // namespace sqdiff
