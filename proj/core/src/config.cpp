#include "sqdiff/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
  return x;
}

std::uint64_t parse_unsigned(const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec == std::errc() && ptr == v.data() + v.size()) return x;
  // Allow exact integers written in exponent form, e.g. 1e8.
  const double d = parse_real(v);
  if (d < 0 || d != std::floor(d) || d >= 1.8446744073709552e19) throw std::invalid_argument(v);
  return static_cast<std::uint64_t>(d);
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Setter = std::function<void(ConstantsConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"C_kdef", [](auto& c, auto& v) { c.C_kdef = parse_real(v); }},
      {"c0_nprime", [](auto& c, auto& v) { c.c0_nprime = parse_real(v); }},
      {"c_nu", [](auto& c, auto& v) { c.c_nu = parse_real(v); }},
      {"c_prime_m", [](auto& c, auto& v) { c.c_prime_m = parse_real(v); }},
      {"discard_exponent", [](auto& c, auto& v) { c.discard_exponent = static_cast<int>(parse_unsigned(v)); }},
      {"tuple_budget", [](auto& c, auto& v) { c.tuple_budget = parse_unsigned(v); }},
      {"memory_budget", [](auto& c, auto& v) { c.memory_budget = parse_unsigned(v); }},
      {"seed", [](auto& c, auto& v) { c.seed = parse_unsigned(v); }},
      {"c_sparse", [](auto& c, auto& v) { c.c_sparse = parse_real(v); }},
      {"spectrum_budget", [](auto& c, auto& v) { c.spectrum_budget = parse_real(v); }},
      {"floor_N", [](auto& c, auto& v) { c.floor_N = static_cast<std::int64_t>(parse_unsigned(v)); }},
      {"C_thm", [](auto& c, auto& v) { c.C_thm = parse_real(v); }},
  };
  return table;
}

}  // namespace

void ConstantsConfig::validate() const {
  const auto positive = [](double x, const char* key) {
    if (!(x > 0) || !std::isfinite(x)) throw InvalidArgument(std::string(key) + " must be a positive number");
  };
  positive(C_kdef, "C_kdef");
  positive(c0_nprime, "c0_nprime");
  positive(c_nu, "c_nu");
  positive(c_prime_m, "c_prime_m");
  positive(c_sparse, "c_sparse");
  positive(spectrum_budget, "spectrum_budget");
  positive(C_thm, "C_thm");
  if (discard_exponent != 6) throw InvalidArgument("discard_exponent is fixed at 6");
  if (tuple_budget == 0) throw InvalidArgument("tuple_budget must be positive");
  if (memory_budget == 0) throw InvalidArgument("memory_budget must be positive");
  if (floor_N < 1) throw InvalidArgument("floor_N must be positive");
}

std::string ConstantsConfig::to_text() const {
  std::ostringstream out;
  out << "C_kdef = " << format_real(C_kdef) << "\n";
  out << "c0_nprime = " << format_real(c0_nprime) << "\n";
  out << "c_nu = " << format_real(c_nu) << "\n";
  out << "c_prime_m = " << format_real(c_prime_m) << "\n";
  out << "discard_exponent = " << discard_exponent << "\n";
  out << "tuple_budget = " << tuple_budget << "\n";
  out << "memory_budget = " << memory_budget << "\n";
  out << "seed = " << seed << "\n";
  out << "c_sparse = " << format_real(c_sparse) << "\n";
  out << "spectrum_budget = " << format_real(spectrum_budget) << "\n";
  out << "floor_N = " << floor_N << "\n";
  out << "C_thm = " << format_real(C_thm) << "\n";
  return out.str();
}

ConstantsConfig ConstantsConfig::parse(std::istream& in) {
  ConstantsConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("unknown key '" + key + "'", line_no);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_no);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no);
    try {
      it->second(cfg, value);
    } catch (const std::exception&) {
      throw ParseError("bad value '" + value + "' for '" + key + "'", line_no);
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line_no);
  }
  return cfg;
}

ConstantsConfig ConstantsConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ConstantsConfig ConstantsConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open constants file '" + path + "'");
  return parse(in);
}

ConstantsConfig ConstantsConfig::from_environment() {
  const char* path = std::getenv("SQDIFF_CONSTANTS");
  if (path == nullptr || *path == '\0') return {};
  return load(path);
}

}  // namespace sqdiff
