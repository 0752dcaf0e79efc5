#include "sqdiff/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

// Comparisons that involve logarithms or a real T carry one rounding; the
// slack is far below any gap an integer count could close.
constexpr double kRelativeSlack = 1e-12;

bool leq(double lhs, double rhs) { return lhs <= rhs + kRelativeSlack * std::max(1.0, std::abs(rhs)); }

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { check_.name = std::move(name); }

  void add(double lhs, double rhs, const std::function<std::string()>& describe) {
    ++check_.instances;
    const double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? INFINITY : 0.0);
    if (check_.instances == 1 || ratio > worst_) {
      worst_ = ratio;
      check_.lhs = lhs;
      check_.rhs = rhs;
    }
    if (!leq(lhs, rhs) && check_.passed) {
      check_.passed = false;
      check_.witness = describe();
    }
  }

  void fail(const std::string& witness) {
    ++check_.instances;
    if (check_.passed) {
      check_.passed = false;
      check_.witness = witness;
    }
  }

  void count() { ++check_.instances; }

  InequalityCheck take() { return std::move(check_); }

 private:
  InequalityCheck check_;
  double worst_ = 0;
};

void validate_B(const RationalSet& B, std::int64_t L, std::int64_t n) {
  if (L < 1 || n < 1) throw InvalidArgument("L and n must be >= 1");
  for (const auto& [q, count] : B.denominator_counts()) {
    if (q > L) throw PreconditionError("B has denominator " + std::to_string(q) + " > L = " + std::to_string(L));
    if (count > n) {
      throw PreconditionError("B has " + std::to_string(count) + " elements with denominator " + std::to_string(q) +
                              ", more than n = " + std::to_string(n));
    }
  }
}

std::vector<Rational> distinct_targets(std::span<const Rational> C) {
  std::vector<Rational> out(C.begin(), C.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& c : out) {
    if (c.is_zero()) throw PreconditionError("target set C must not contain 0");
  }
  return out;
}

std::uint64_t small_denominator(const Rational& x) {
  if (!x.is_small()) throw ResourceError("denominator of " + x.to_string() + " exceeds 64 bits");
  return static_cast<std::uint64_t>(x.small_den());
}

double sum_over_A(const RationalSet& A, const WeightFunction& w) {
  double s = 0;
  for (const auto& a : A) s += w(static_cast<std::uint64_t>(a.den()));
  return s;
}

double sum_over_C(std::span<const Rational> C, const WeightFunction& w) {
  double s = 0;
  for (const auto& c : C) {
    const std::uint64_t q = small_denominator(c);
    const double t = static_cast<double>(tau3(q));
    s += w(q) * t * t;
  }
  return s;
}

double m_log_weight_tau3(const WeightFunction& w, std::int64_t L) {
  const WeightFunction t3 = weight_tau3_power(1);
  return log_maximal_average(weight_product(w, t3), static_cast<std::uint64_t>(L));
}

std::string show(const ReducedRational& r) { return r.to_string(); }

}  // namespace

EdgeColor color_edge(const ReducedRational& x, const ReducedRational& y, ColorSign sign) {
  const std::int64_t k = x.den();
  const std::int64_t l = y.den();
  const std::int64_t d = std::gcd(k, l);
  const __int128 al = static_cast<__int128>(x.num()) * l;
  const __int128 bk = static_cast<__int128>(y.num()) * k;
  const __int128 v = (sign == ColorSign::minus ? al - bk : al + bk) / d;
  __int128 r = v % d;
  if (r < 0) r += d;
  return {d, std::gcd(static_cast<std::int64_t>(r), d)};
}

std::int64_t EdgeDecomposition::R(std::int64_t d, std::int64_t f, std::int64_t k) const {
  const auto it = popular_residues.find({d, f, k});
  return it == popular_residues.end() ? 0 : static_cast<std::int64_t>(it->second.size());
}

EdgeDecomposition split_edges(const RationalSet& A, const RationalSet& B, double T, ColorSign sign) {
  if (!(T > 0)) throw InvalidArgument("T must be > 0");
  EdgeDecomposition dec;
  dec.T = T;
  dec.sign = sign;
  dec.a_size = A.size();
  dec.b_size = B.size();
  dec.colors.resize(A.size() * B.size());
  dec.popular.assign(A.size() * B.size(), false);
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::map<EdgeColor, std::uint64_t> class_size;
    for (std::size_t j = 0; j < B.size(); ++j) {
      const EdgeColor c = color_edge(A[i], B[j], sign);
      dec.colors[i * B.size() + j] = c;
      ++class_size[c];
    }
    const auto k = static_cast<std::uint64_t>(A[i].den());
    const std::uint64_t t3 = tau3(k);
    for (std::size_t j = 0; j < B.size(); ++j) {
      const EdgeColor& c = dec.colors[i * B.size() + j];
      // count >= T / tau3(k), compared without division.
      const bool pop = static_cast<long double>(class_size[c]) * static_cast<long double>(t3) >=
                       static_cast<long double>(T);
      dec.popular[i * B.size() + j] = pop;
      (pop ? dec.E1 : dec.E2).push_back({i, j});
    }
    for (const auto& [c, size] : class_size) {
      if (static_cast<long double>(size) * static_cast<long double>(t3) >= static_cast<long double>(T)) {
        auto& residues = dec.popular_residues[{c.d, c.f, A[i].den()}];
        const std::int64_t res = A[i].num() % c.f;
        const auto pos = std::lower_bound(residues.begin(), residues.end(), res);
        if (pos == residues.end() || *pos != res) residues.insert(pos, res);
      }
    }
  }
  return dec;
}

std::int64_t count_R(const RationalSet& A, const RationalSet& B, std::int64_t d, std::int64_t f, std::int64_t k,
                     double T, ColorSign sign) {
  if (f < 1 || d < 1 || k < 1 || d % f != 0 || k % d != 0) throw InvalidArgument("count_R needs f | d | k");
  return split_edges(A, B, T, sign).R(d, f, k);
}

LinearSolutionCount count_solutions(const RationalSet& A, const RationalSet& B, std::span<const Rational> C,
                                    const EdgeDecomposition& dec, const WeightFunction& w) {
  LinearSolutionCount out;
  for (const auto& c : C) {
    out.F1[c] = 0;
    out.F2[c] = 0;
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double wk = w(static_cast<std::uint64_t>(A[i].den()));
    for (std::size_t j = 0; j < B.size(); ++j) {
      const Rational x = Rational(A[i]) - Rational(B[j]);
      auto& F = dec.is_popular(i, j) ? out.F1 : out.F2;
      const auto it = F.find(x);
      if (it != F.end()) it->second += wk;
    }
  }
  return out;
}

bool DecompositionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const InequalityCheck* DecompositionReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

DecompositionReport verify_decomposition_bounds(const RationalSet& A, const RationalSet& B,
                                                std::span<const Rational> C_in, double T, const WeightFunction& w,
                                                std::int64_t L, std::int64_t n, ColorSign sign) {
  validate_B(B, L, n);
  const std::vector<Rational> C = distinct_targets(C_in);
  const EdgeDecomposition dec = split_edges(A, B, T, sign);
  const LinearSolutionCount F = count_solutions(A, B, C, dec, w);

  DecompositionReport rep;
  rep.T = T;
  rep.L = L;
  rep.n = n;
  rep.sum_A = sum_over_A(A, w);
  rep.sum_C = sum_over_C(C, w);
  rep.m_log = L >= 2 ? m_log_weight_tau3(w, L) : 0.0;
  for (const auto& [x, v] : F.F1) rep.total_F1 += v;
  for (const auto& [x, v] : F.F2) rep.total_F2 += v;

  // Independent recount: for each target c and b in B, a = c + b must be in A.
  for (const auto& c : C) {
    for (const auto& b : B) {
      const Rational a = c + Rational(b);
      if (a.sign() <= 0 || !a.is_small() || a > Rational(1)) continue;
      const ReducedRational r = reduce(a.small_num(), a.small_den());
      if (A.contains(r)) rep.direct_total += w(static_cast<std::uint64_t>(r.den()));
    }
  }

  // R_{d,f,k} <= L n tau3(k) / (d T).
  CheckBuilder rcount("residue_count");
  for (const auto& [key, residues] : dec.popular_residues) {
    const auto [d, f, k] = key;
    const double lhs = static_cast<double>(residues.size());
    const double rhs = static_cast<double>(L) * static_cast<double>(n) *
                       static_cast<double>(tau3(static_cast<std::uint64_t>(k))) / (static_cast<double>(d) * T);
    rcount.add(lhs, rhs, [&, d = d, f = f, k = k] {
      return "R_{" + std::to_string(d) + "," + std::to_string(f) + "," + std::to_string(k) + "} = " +
             std::to_string(residues.size());
    });
  }

  // sum_C F2 <= T sum_A w(k).
  CheckBuilder gb2("unpopular_total");
  gb2.add(rep.total_F2, T * rep.sum_A, [&] { return "sum F2 = " + std::to_string(rep.total_F2); });

  // F1(c/q) <= sum_{k' l' e = q} sum_{f <= L} w(k' e f) e R_{ef,f,k'ef}.
  // Each nonzero R key (d, f, k) is the term e = d/f, k' = k/d when k'e | q.
  CheckBuilder b1("popular_pointwise");
  CheckBuilder gbc("popular_closed");
  CheckBuilder gb("total_closed");
  const double closed_factor = L >= 2 ? static_cast<double>(L) * static_cast<double>(n) *
                                            std::log(static_cast<double>(L)) / T * rep.m_log
                                      : 0.0;
  for (const auto& c : C) {
    const std::uint64_t q = small_denominator(c);
    const double f1 = F.F1.at(c);
    double rhs = 0;
    for (const auto& [key, residues] : dec.popular_residues) {
      const auto [d, f, k] = key;
      const std::int64_t e = d / f;
      const std::int64_t kp = k / d;
      const auto ke = static_cast<std::uint64_t>(kp * e);
      if (q % ke != 0) continue;
      rhs += w(static_cast<std::uint64_t>(k)) * static_cast<double>(e) * static_cast<double>(residues.size());
    }
    b1.add(f1, rhs, [&] { return "c/q = " + c.to_string() + ": F1 = " + std::to_string(f1); });
    if (L >= 2) {
      const double t3 = static_cast<double>(tau3(q));
      gbc.add(f1, closed_factor * w(q) * t3 * t3,
              [&] { return "c/q = " + c.to_string() + ": F1 = " + std::to_string(f1); });
    }
  }
  if (L >= 2) gb.add(rep.total_F1, closed_factor * rep.sum_C, [&] { return "sum F1 = " + std::to_string(rep.total_F1); });

  // Injectivity: for fixed k, (d, f) and b, the popular edges of colour (d, f)
  // from A_{=k} to b all have the same a mod f.
  CheckBuilder inj("injectivity");
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::size_t>, std::pair<std::int64_t, std::size_t>>
      seen;
  for (const auto& e : dec.E1) {
    const EdgeColor& col = dec.color(e.a, e.b);
    const std::int64_t res = A[e.a].num() % col.f;
    const auto key = std::make_tuple(A[e.a].den(), col.d, col.f, e.b);
    const auto [it, inserted] = seen.try_emplace(key, res, e.a);
    if (inserted) {
      inj.count();
    } else if (it->second.first != res) {
      inj.fail(show(B[e.b]) + " joined to " + show(A[it->second.second]) + " and " + show(A[e.a]) +
               " by popular colour (" + std::to_string(col.d) + "," + std::to_string(col.f) + ")");
    }
  }

  // Partition of A x B and agreement with the recount.
  CheckBuilder part("partition");
  if (dec.E1.size() + dec.E2.size() != A.size() * B.size()) part.fail("|E1| + |E2| != |A||B|");
  const double total = rep.total_F1 + rep.total_F2;
  if (std::abs(total - rep.direct_total) > kRelativeSlack * std::max(1.0, rep.direct_total)) {
    part.fail("F1 + F2 = " + std::to_string(total) + " but direct count = " + std::to_string(rep.direct_total));
  } else {
    part.count();
  }

  rep.checks.push_back(rcount.take());
  rep.checks.push_back(gb2.take());
  rep.checks.push_back(b1.take());
  rep.checks.push_back(gbc.take());
  rep.checks.push_back(gb.take());
  rep.checks.push_back(inj.take());
  rep.checks.push_back(part.take());
  return rep;
}

double optimal_T(const RationalSet& A, const RationalSet& B, std::span<const Rational> C_in, const WeightFunction& w,
                 std::int64_t L, std::int64_t n) {
  validate_B(B, L, n);
  if (L < 2) throw InvalidArgument("optimal_T needs L >= 2");
  const std::vector<Rational> C = distinct_targets(C_in);
  const double sum_A = sum_over_A(A, w);
  if (!(sum_A > 0)) throw InvalidArgument("optimal_T needs sum over A of w(k) > 0");
  const double T = std::sqrt(static_cast<double>(L) * static_cast<double>(n) * std::log(static_cast<double>(L)) *
                             m_log_weight_tau3(w, L) * sum_over_C(C, w) / sum_A);
  if (!(T > 0)) throw DomainError("optimal T is zero (empty or zero-weight target set)");
  return T;
}

double geometric_mean_bound(const RationalSet& A, std::span<const Rational> C_in, const WeightFunction& w,
                            std::int64_t L, std::int64_t n) {
  if (L < 2) throw InvalidArgument("geometric_mean_bound needs L >= 2");
  const std::vector<Rational> C = distinct_targets(C_in);
  return std::sqrt(static_cast<double>(L) * static_cast<double>(n) * std::log(static_cast<double>(L)) *
                   m_log_weight_tau3(w, L) * sum_over_C(C, w) * sum_over_A(A, w));
}

std::vector<DyadicLevel> dyadic_levels(const ConvolutionMap& f) {
  std::map<int, std::vector<Rational>> levels;
  for (const auto& [x, v] : f) {
    if (v == 0) continue;
    levels[63 - __builtin_clzll(v)].push_back(x);
  }
  std::vector<DyadicLevel> out;
  for (auto& [j, support] : levels) out.push_back({j, std::move(support)});
  return out;
}

BigInt induction_statistic(const RationalSet& B, int j, int t, const EnergyBudget& budget) {
  if (j < 1) throw InvalidArgument("induction statistic needs j >= 1");
  if (t < 0) throw InvalidArgument("induction statistic needs t >= 0");
  const ConvolutionMap f = convolution_power(B, j, budget);
  BigInt total = 0;
  for (const auto& [x, v] : f) {
    const std::uint64_t q = small_denominator(x);
    BigInt term = BigInt(v) * BigInt(v);
    const BigInt t3 = BigInt(tau3(q));
    for (int i = 0; i < 2 * t; ++i) term *= t3;
    total += term;
  }
  return total;
}

double induction_ratio(const RationalSet& B, int j, int t, const EnergyBudget& budget) {
  if (j < 2) throw InvalidArgument("induction ratio needs j >= 2");
  const BigInt num = induction_statistic(B, j, t, budget);
  const BigInt den = induction_statistic(B, j - 1, t + 1, budget);
  const double qn = static_cast<double>(B.denominator_cap()) *
                    static_cast<double>(std::max<std::int64_t>(1, B.max_per_denominator()));
  return num.convert_to<double>() / (qn * den.convert_to<double>());
}

}  // namespace sqdiff
