#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "json_out.hpp"
#include "sqdiff/arith.hpp"
#include "sqdiff/config.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/io.hpp"
#include "sqdiff/parallel.hpp"

namespace sqdiff::cli {

namespace {

struct Common {
  unsigned threads = 0;
  std::string constants;
  bool json = true;
};

ConstantsConfig load_constants(const std::string& path) {
  return path.empty() ? ConstantsConfig::from_environment() : ConstantsConfig::load(path);
}

WeightFunction parse_weight(const std::string& s) {
  if (s == "one") return weight_one();
  const std::string prefix = "tau3pow:";
  if (s.rfind(prefix, 0) == 0) {
    const std::string t = s.substr(prefix.size());
    std::size_t used = 0;
    int k = -1;
    try {
      k = std::stoi(t, &used);
    } catch (const std::exception&) {
    }
    if (used == t.size() && k >= 0) return weight_tau3_power(k);
  }
  throw InvalidArgument("--omega must be 'one' or 'tau3pow:<t>' with t >= 0, got '" + s + "'");
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

// --- construct ---------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::int64_t N = 0;
  std::int64_t q = 1;
  std::int64_t r = 0;
  std::uint64_t seed = 0;
  double keep = 1.0;
  double p = 0.5;
  std::string out;
};

int do_construct(const ConstructArgs& a, std::ostream& out) {
  IntegerSet A;
  if (a.kind == "greedy") {
    A = greedy_sdf(a.N);
  } else if (a.kind == "planted") {
    A = planted_sdf(a.N, a.q, a.r, a.seed, a.keep);
  } else if (a.kind == "random") {
    A = random_sdf(a.N, a.seed);
  } else {
    A = random_subset(a.N, a.p, a.seed);
  }
  if (a.out.empty()) {
    write_integer_set(out, A);
    return 0;
  }
  save_integer_set(a.out, A);
  Json j = document("construct");
  j["set_kind"] = a.kind;
  j["N"] = A.N();
  j["size"] = A.size();
  j["alpha"] = num(A.density());
  j["out"] = a.out;
  emit(out, j);
  return 0;
}

// --- verify / report ---------------------------------------------------

int do_verify(const std::string& path, std::ostream& out) {
  const auto A = load_integer_set(path);
  const auto w = find_square_difference(A);
  Json j = document("verify");
  j["N"] = A.N();
  j["size"] = A.size();
  j["sdf"] = !w.has_value();
  j["witness"] = w ? to_json(*w) : Json(nullptr);
  emit(out, j);
  return w ? 1 : 0;
}

int do_report(const std::string& path, double c, std::ostream& out) {
  const auto A = load_integer_set(path);
  Json j = document("report");
  j["N"] = A.N();
  j["size"] = A.size();
  j["alpha"] = num(A.density());
  const auto w = find_square_difference(A);
  j["sdf"] = !w.has_value();
  j["witness"] = w ? to_json(*w) : Json(nullptr);
  const auto corr = correlation_count(A);
  j["correlation"] = num(corr.value);
  j["correlation_pairs"] = corr.pairs;
  j["sparse"] = A.density() < std::pow(static_cast<double>(A.N()), -1.0 / 3.0);
  try {
    const double bound = theorem_bound(A.N(), c);
    j["theorem_bound"] = num(bound);
    j["size_over_bound"] = num(static_cast<double>(A.size()) / bound);
  } catch (const DomainError&) {
    j["theorem_bound"] = nullptr;
    j["size_over_bound"] = nullptr;
  }
  emit(out, j);
  return 0;
}

// --- energy ------------------------------------------------------------

int do_energy(const std::string& path, int m, const std::string& backend, std::optional<double> C,
              const ConstantsConfig& constants, std::ostream& out) {
  const auto B = load_rational_set(path);
  const auto rep = energy_report(B, m, parse_energy_backend(backend), C.value_or(constants.C_thm),
                                 constants.energy_budget());
  Json j = document("energy");
  j["size"] = B.size();
  j.update(to_json(rep));
  emit(out, j);
  return 0;
}

// --- decompose ---------------------------------------------------------

struct DecomposeArgs {
  std::string A, B, C;
  std::string T = "auto";
  std::string omega = "one";
  std::string sign = "minus";
  std::optional<std::int64_t> L;
  std::optional<std::int64_t> n;
};

int do_decompose(const DecomposeArgs& a, std::ostream& out) {
  const auto A = load_rational_set(a.A);
  const auto B = load_rational_set(a.B);
  const auto C = load_signed_rationals(a.C);
  const auto w = parse_weight(a.omega);
  std::int64_t max_den = 2;
  for (const auto& b : B.elements()) max_den = std::max(max_den, b.den());
  const std::int64_t L = a.L.value_or(max_den);
  const std::int64_t n = a.n.value_or(std::max<std::int64_t>(1, static_cast<std::int64_t>(B.max_per_denominator())));
  if (a.sign != "minus" && a.sign != "plus") throw InvalidArgument("--sign must be minus or plus");
  const ColorSign sign = a.sign == "plus" ? ColorSign::plus : ColorSign::minus;
  double T = 0;
  if (a.T == "auto") {
    T = optimal_T(A, B, C, w, L, n);
  } else {
    std::size_t used = 0;
    try {
      T = std::stod(a.T, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.T.size() || !(T > 0)) throw InvalidArgument("--T must be a positive number or 'auto'");
  }
  const auto rep = verify_decomposition_bounds(A, B, C, T, w, L, n, sign);
  Json j = document("decompose");
  j["omega"] = w.label;
  j["sign"] = a.sign;
  j.update(to_json(rep));
  emit(out, j);
  return rep.all_passed() ? 0 : 1;
}

// --- spectrum ----------------------------------------------------------

struct SpectrumArgs {
  std::string set;
  std::optional<double> C;
  bool allow_sparse = false;
  std::string csv;
  std::size_t samples = 4096;
  int chang_m = 0;
};

int do_spectrum(const SpectrumArgs& a, ConstantsConfig constants, std::ostream& out) {
  const auto A = load_integer_set(a.set);
  if (a.C) constants.C_kdef = *a.C;
  constants.validate();
  const auto rep = extract_spectrum(A, constants, SpectrumOptions{a.allow_sparse});
  Json j = document("spectrum");
  j.update(to_json(rep));
  int code = 0;
  if (a.chang_m > 0 && !rep.frequencies.empty()) {
    std::vector<double> gamma;
    for (const auto& f : rep.frequencies) gamma.push_back(f.gamma);
    const auto ch = chang_check(A, gamma, a.chang_m);
    j["chang"] = to_json(ch);
    if (!(ch.holder_ok && ch.fejer_ok && ch.poisson_ok && ch.chain_ok)) code = 1;
  }
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw InvalidArgument("cannot write '" + a.csv + "'");
    const TrigPoly f = TrigPoly::indicator(A);
    const double step = 1.0 / static_cast<double>(a.samples);
    const auto values = f.grid(step, step, a.samples);
    csv << "gamma,abs\n";
    char buf[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", step * static_cast<double>(i + 1), std::abs(values[i]));
      csv << buf;
    }
    j["csv"] = a.csv;
  }
  emit(out, j);
  return code;
}

// --- increment / iterate -----------------------------------------------

struct IncrementArgs {
  std::string set;
  std::int64_t q = 1;
  std::optional<double> K;
  std::string nu = "auto";
};

double resolve_nu(const std::string& s, double alpha, const ConstantsConfig& constants) {
  if (s == "auto") return nu_of_alpha(alpha, constants.c_nu);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidArgument("--nu must be a number or 'auto'");
  return v;
}

int do_increment(const IncrementArgs& a, const ConstantsConfig& constants, std::ostream& out) {
  const auto A = load_integer_set(a.set);
  const double nu = resolve_nu(a.nu, A.density(), constants);
  const double K = a.K ? *a.K : static_cast<double>(k_parameter(A.density(), A.N(), constants.C_kdef));
  const auto r = find_increment(A, a.q, K, nu, IncrementOptions::from(constants));
  Json j = document("increment");
  j.update(to_json(r));
  j["sdf_prime"] = is_sdf(r.A_prime);
  emit(out, j);
  return 0;
}

int do_iterate(const std::string& path, const ConstantsConfig& constants, std::ostream& out) {
  const auto A = load_integer_set(path);
  const auto log = iterate(A, constants);
  for (const auto& s : log.steps) {
    Json j = document("iterate-step");
    j.update(to_json(s));
    emit(out, j);
  }
  Json j = document("iterate-summary");
  j.update(summary_json(log));
  emit(out, j);
  return log.monotone && log.sdf_preserved ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-difference-free sets: energies, spectra and density increments", "sqdiff"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  app.add_option("--constants", common.constants, "Constants file (default: $SQDIFF_CONSTANTS)");
  app.add_flag("--json", common.json, "JSON output (the only format)");

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Build an SDF set");
  c_construct->add_option("--kind", construct.kind, "greedy|planted|random|subset")
      ->required()
      ->check(CLI::IsMember({"greedy", "planted", "random", "subset"}));
  c_construct->add_option("--N", construct.N, "Interval length")->required()->check(CLI::PositiveNumber);
  c_construct->add_option("--q", construct.q, "Planted modulus");
  c_construct->add_option("--r", construct.r, "Planted residue");
  c_construct->add_option("--seed", construct.seed, "Seed");
  c_construct->add_option("--keep", construct.keep, "Planted keep probability");
  c_construct->add_option("--p", construct.p, "Subset probability");
  c_construct->add_option("--out", construct.out, "Output file (default: stdout)");

  std::string set_path;
  auto* c_verify = app.add_subcommand("verify", "Check that a set has no square difference");
  c_verify->add_option("--set", set_path, "Integer set file")->required();

  double report_c = 1.0;
  auto* c_report = app.add_subcommand("report", "Summary of an integer set");
  c_report->add_option("--set", set_path, "Integer set file")->required();
  c_report->add_option("--c", report_c, "Exponent constant of the size bound");

  int energy_m = 2;
  std::string backend = "mitm";
  std::optional<double> energy_C;
  auto* c_energy = app.add_subcommand("energy", "Additive energy of a rational set");
  c_energy->add_option("--set", set_path, "Rational set file")->required();
  c_energy->add_option("--m", energy_m, "Half the tuple length")->check(CLI::PositiveNumber);
  c_energy->add_option("--backend", backend, "brute|mitm|conv")->check(CLI::IsMember({"brute", "mitm", "conv"}));
  c_energy->add_option("--C", energy_C, "Exponent constant of the bound");

  DecomposeArgs decompose;
  auto* c_decompose = app.add_subcommand("decompose", "Check the popular-colour decomposition bounds");
  c_decompose->add_option("--A", decompose.A, "Rational set file")->required();
  c_decompose->add_option("--B", decompose.B, "Rational set file")->required();
  c_decompose->add_option("--C", decompose.C, "Signed rationals file")->required();
  c_decompose->add_option("--T", decompose.T, "Threshold or 'auto'");
  c_decompose->add_option("--omega", decompose.omega, "one|tau3pow:<t>");
  c_decompose->add_option("--sign", decompose.sign, "minus|plus");
  c_decompose->add_option("--L", decompose.L, "Denominator cap (default: largest in B)");
  c_decompose->add_option("--n", decompose.n, "Per-denominator cap (default: largest in B)");

  SpectrumArgs spectrum;
  auto* c_spectrum = app.add_subcommand("spectrum", "Major-arc spectrum of an integer set");
  c_spectrum->add_option("--set", spectrum.set, "Integer set file")->required();
  c_spectrum->add_option("--C", spectrum.C, "K constant (overrides C_kdef)");
  c_spectrum->add_flag("--allow-sparse", spectrum.allow_sparse, "Evaluate sparse sets too");
  c_spectrum->add_option("--csv", spectrum.csv, "Write (gamma, |1^_A(gamma)|) samples");
  c_spectrum->add_option("--samples", spectrum.samples, "CSV sample count")->check(CLI::PositiveNumber);
  c_spectrum->add_option("--chang", spectrum.chang_m, "Run the energy chain with this m on the class");

  IncrementArgs increment;
  auto* c_increment = app.add_subcommand("increment", "One density-increment step");
  c_increment->add_option("--set", increment.set, "Integer set file")->required();
  c_increment->add_option("--q", increment.q, "Denominator")->required();
  c_increment->add_option("--K", increment.K, "Arc parameter (default from C_kdef)");
  c_increment->add_option("--nu", increment.nu, "Increment parameter or 'auto'");

  auto* c_iterate = app.add_subcommand("iterate", "Iterate the density increment");
  c_iterate->add_option("--set", set_path, "Integer set file")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    sub->add_option("--constants", common.constants, "Constants file (default: $SQDIFF_CONSTANTS)");
    sub->add_flag("--json", common.json, "JSON output (the only format)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(common.threads);
    const auto constants = load_constants(common.constants);
    if (c_construct->parsed()) return do_construct(construct, out);
    if (c_verify->parsed()) return do_verify(set_path, out);
    if (c_report->parsed()) return do_report(set_path, report_c, out);
    if (c_energy->parsed()) return do_energy(set_path, energy_m, backend, energy_C, constants, out);
    if (c_decompose->parsed()) return do_decompose(decompose, out);
    if (c_spectrum->parsed()) return do_spectrum(spectrum, constants, out);
    if (c_increment->parsed()) return do_increment(increment, constants, out);
    if (c_iterate->parsed()) return do_iterate(set_path, constants, out);
  } catch (const std::exception& e) {
    Json j = document("error");
    j["error"] = e.what();
    err << j.dump() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace sqdiff::cli
