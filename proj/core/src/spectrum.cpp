#include "sqdiff/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sqdiff/arcs.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/parallel.hpp"

namespace sqdiff {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::sparse:
      return "sparse";
    case Branch::increment:
      return "increment";
    case Branch::many_rationals:
      return "many-rationals";
  }
  return "?";
}

std::int64_t k_parameter(double alpha, std::int64_t N, double C) {
  if (!(alpha > 0)) throw InvalidArgument("K needs alpha > 0");
  const double k = std::ceil(C * std::log(static_cast<double>(N)) / (alpha * alpha));
  if (!(k < 9e15)) throw ResourceError("K = C alpha^-2 log N is too large");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
}

SpectrumReport extract_spectrum(const IntegerSet& A, const ConstantsConfig& constants, const SpectrumOptions& options) {
  SpectrumReport rep;
  rep.N = A.N();
  rep.size = A.size();
  rep.alpha = A.density();
  const double Nd = static_cast<double>(A.N());
  rep.reference = rep.alpha * static_cast<double>(A.size()) * std::sqrt(Nd);
  rep.sparse = rep.alpha < std::pow(Nd, -1.0 / 3.0);
  if (rep.sparse) rep.branch = Branch::sparse;
  if (A.empty() || (rep.sparse && !options.allow_sparse)) return rep;

  const std::int64_t K = k_parameter(rep.alpha, A.N(), constants.C_kdef);
  rep.K = K;
  const double Kd = static_cast<double>(K);
  rep.discard_threshold = Nd / std::pow(Kd, constants.discard_exponent);

  // Folding costs N per denominator, the cosine sums q per numerator.
  const double fold_cost = Kd * Nd + Kd * Kd * Kd / 3.0 + static_cast<double>(A.size()) * static_cast<double>(A.size());
  if (fold_cost > constants.spectrum_budget) {
    throw ResourceError("spectrum with K = " + std::to_string(K) + " at N = " + std::to_string(A.N()) +
                        " exceeds the spectrum budget; lower C_kdef or raise spectrum_budget");
  }

  const ArcMassEngine engine(A);
  struct Candidate {
    ReducedRational center;
    double mass;
  };
  std::vector<Candidate> gamma2;
  rep.denominator_mass.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (std::int64_t q = 1; q <= K; ++q) {
    const auto masses = engine.masses_for_denominator(q, Kd);
    const auto centers = rationals_with_denominator(q);
    for (std::size_t i = 0; i < masses.size(); ++i) {
      ++rep.arcs_evaluated;
      rep.denominator_mass[static_cast<std::size_t>(q)] += masses[i];
      if (masses[i] <= rep.discard_threshold) {
        ++rep.arcs_discarded;
      } else {
        gamma2.push_back({centers[i], masses[i]});
      }
    }
  }
  rep.arcs_disjoint = 2.0 * Kd * Kd < Nd;

  const double peak_cost = static_cast<double>(gamma2.size()) * 130.0 * static_cast<double>(A.size());
  if (fold_cost + peak_cost > constants.spectrum_budget) {
    throw ResourceError("spectrum peak search over " + std::to_string(gamma2.size()) +
                        " arcs exceeds the spectrum budget");
  }

  const TrigPoly indicator = TrigPoly::indicator(A);
  std::vector<ArcPeak> peaks(gamma2.size());
  parallel_for(gamma2.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) peaks[i] = arc_peak(indicator, MajorArc(gamma2[i].center, Kd, A.N()));
  });

  struct ClassAcc {
    double score = 0;
    std::vector<std::size_t> members;
  };
  std::map<std::pair<int, int>, ClassAcc> classes;
  for (std::size_t i = 0; i < gamma2.size(); ++i) {
    const auto q = static_cast<double>(gamma2[i].center.den());
    const double mass = gamma2[i].mass;
    const double term = std::sqrt(mass) * peaks[i].value / std::sqrt(q);
    rep.total_score += term;
    const int jq = static_cast<int>(std::floor(std::log2(q)));
    // Smallest power of two B with mass >= alpha^2 N / B^2; then mass < 4 alpha^2 N / B^2.
    int jb = static_cast<int>(std::ceil(std::log2(rep.alpha * std::sqrt(Nd / mass))));
    while (mass < rep.alpha * rep.alpha * Nd / std::ldexp(1.0, 2 * jb)) ++jb;
    while (mass >= 4.0 * rep.alpha * rep.alpha * Nd / std::ldexp(1.0, 2 * jb)) --jb;
    auto& acc = classes[{jq, jb}];
    acc.score += term;
    acc.members.push_back(i);
  }
  rep.classes = classes.size();
  if (classes.empty()) return rep;

  auto best = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    if (it->second.score > best->second.score) best = it;
  }
  rep.Q = std::int64_t{1} << best->first.first;
  rep.B_level = std::ldexp(1.0, best->first.second);
  rep.level_lo = rep.alpha * rep.alpha * Nd / (rep.B_level * rep.B_level);
  rep.level_hi = 4.0 * rep.level_lo;
  rep.class_score = best->second.score;
  for (const std::size_t i : best->second.members) {
    double g = peaks[i].gamma - std::floor(peaks[i].gamma);
    if (g == 0) g = 1.0;
    rep.frequencies.push_back({gamma2[i].center, g, peaks[i].value, gamma2[i].mass});
  }
  std::sort(rep.frequencies.begin(), rep.frequencies.end(),
            [](const auto& x, const auto& y) { return x.center < y.center; });
  return rep;
}

}  // namespace sqdiff
