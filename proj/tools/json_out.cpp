#include "json_out.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sqdiff::cli {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json document(const char* kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

Json to_json(const SquareWitness& w) { return Json{{"a", w.a}, {"b", w.b}, {"n", w.n}}; }

Json to_json(const EnergyReport& r) {
  Json j;
  j["m"] = r.m;
  j["backend"] = to_string(r.backend);
  j["energy"] = r.energy;
  j["diagonal_lower"] = r.diagonal_lower;
  j["Q"] = r.Q;
  j["n"] = r.n;
  j["C"] = num(r.C);
  j["theorem_rhs"] = r.theorem_rhs ? num(*r.theorem_rhs) : Json(nullptr);
  return j;
}

Json to_json(const DecompositionReport& r) {
  Json j;
  j["T"] = num(r.T);
  j["L"] = r.L;
  j["n"] = r.n;
  j["sum_A"] = num(r.sum_A);
  j["sum_C"] = num(r.sum_C);
  j["m_log"] = num(r.m_log);
  j["total_F1"] = num(r.total_F1);
  j["total_F2"] = num(r.total_F2);
  j["direct_total"] = num(r.direct_total);
  j["all_passed"] = r.all_passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["instances"] = c.instances;
    cj["lhs"] = num(c.lhs);
    cj["rhs"] = num(c.rhs);
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const SpectrumReport& r) {
  Json j;
  j["N"] = r.N;
  j["size"] = r.size;
  j["alpha"] = num(r.alpha);
  j["branch"] = to_string(r.branch);
  j["sparse"] = r.sparse;
  j["K"] = r.K;
  j["discard_threshold"] = num(r.discard_threshold);
  j["arcs_disjoint"] = r.arcs_disjoint;
  j["arcs_evaluated"] = r.arcs_evaluated;
  j["arcs_discarded"] = r.arcs_discarded;
  j["classes"] = r.classes;
  j["Q"] = r.Q;
  j["B_level"] = num(r.B_level);
  j["level_lo"] = num(r.level_lo);
  j["level_hi"] = num(r.level_hi);
  j["class_score"] = num(r.class_score);
  j["total_score"] = num(r.total_score);
  j["reference"] = num(r.reference);
  Json freqs = Json::array();
  for (const auto& f : r.frequencies) {
    freqs.push_back(Json{{"center", f.center.to_string()},
                         {"gamma", num(f.gamma)},
                         {"peak", num(f.peak)},
                         {"mass", num(f.mass)}});
  }
  j["frequencies"] = std::move(freqs);
  return j;
}

Json to_json(const IncrementResult& r, bool with_elements) {
  Json j;
  j["found"] = r.found;
  j["q"] = r.q;
  j["x"] = r.x;
  j["K"] = num(r.K);
  j["nu"] = num(r.nu);
  j["alpha"] = num(r.alpha);
  j["N_prime"] = r.N_prime;
  j["size_prime"] = r.A_prime.size();
  j["alpha_prime"] = num(r.alpha_prime);
  j["required_alpha"] = num((1.0 + r.nu / 20.0) * r.alpha);
  j["best_count"] = r.best_count;
  j["shifts_scanned"] = r.shifts_scanned;
  j["hypothesis_mass"] = num(r.hypothesis_mass);
  j["hypothesis_mass_closed"] = num(r.hypothesis_mass_closed);
  j["hypothesis_target"] = num(r.hypothesis_target);
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["hypothesis_converged"] = r.hypothesis_converged;
  j["phase_bound"] = num(r.phase_bound);
  if (with_elements) j["A_prime"] = r.A_prime.elements();
  return j;
}

Json to_json(const ManyRationalsBound& b) {
  Json j;
  j["m"] = b.m;
  j["log_lhs"] = num(b.log_lhs);
  j["log_rhs"] = num(b.log_rhs);
  j["contradiction"] = b.contradiction;
  j["separation"] = num(b.separation);
  j["class_size"] = b.class_size;
  j["class_energy"] = b.class_energy ? Json(*b.class_energy) : Json(nullptr);
  j["energy_ratio"] = b.energy_ratio ? num(*b.energy_ratio) : Json(nullptr);
  return j;
}

Json to_json(const TrichotomyResult& r) {
  Json j;
  j["branch"] = to_string(r.branch);
  j["nu"] = num(r.nu);
  j["candidates"] = r.candidates;
  j["violators"] = r.violators;
  j["increment"] = r.increment ? to_json(*r.increment, false) : Json(nullptr);
  j["bound"] = r.bound ? to_json(*r.bound) : Json(nullptr);
  j["spectrum"] = r.spectrum ? to_json(*r.spectrum) : Json(nullptr);
  return j;
}

Json to_json(const IterationStep& s) {
  Json j;
  j["t"] = s.t;
  j["N"] = s.N;
  j["size"] = s.size;
  j["alpha"] = num(s.alpha);
  j["branch"] = s.branch ? Json(to_string(*s.branch)) : Json(nullptr);
  j["nu"] = num(s.nu);
  j["q"] = s.q;
  j["x"] = s.x;
  j["K"] = num(s.K);
  j["candidates"] = s.candidates;
  j["sdf"] = s.sdf;
  if (s.q != 0) {
    j["N_next"] = s.N_next;
    j["size_next"] = s.size_next;
    j["alpha_next"] = num(s.alpha_next);
  }
  return j;
}

Json summary_json(const IterationLog& log) {
  Json j;
  j["termination"] = log.termination;
  j["N0"] = log.N0;
  j["alpha0"] = num(log.alpha0);
  j["nu"] = num(log.nu);
  j["steps"] = log.steps.size();
  j["increments"] = log.increments;
  j["step_cap"] = log.step_cap;
  j["step_bound"] = num(log.step_bound);
  j["monotone"] = log.monotone;
  j["sdf_preserved"] = log.sdf_preserved;
  return j;
}

Json to_json(const ChangReport& r) {
  Json j;
  j["m"] = r.m;
  j["frequencies"] = r.frequencies;
  j["lhs"] = num(r.lhs);
  j["holder_rhs"] = num(r.holder_rhs);
  j["holder_ok"] = r.holder_ok;
  j["power_sum"] = num(r.power_sum);
  j["fejer_truncated"] = num(r.fejer_truncated);
  j["fejer_series"] = num(r.fejer_series);
  j["fejer_ok"] = r.fejer_ok;
  j["poisson_sum"] = num(r.poisson_sum);
  j["poisson_ok"] = r.poisson_ok;
  j["energy_wrap_half"] = r.energy_wrap_half;
  j["energy_literal"] = r.energy_literal;
  j["chain_bound"] = num(r.chain_bound);
  j["chain_ok"] = r.chain_ok;
  j["final_ratio"] = num(r.final_ratio);
  return j;
}

}  // namespace sqdiff::cli
