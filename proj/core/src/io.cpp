#include "sqdiff/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, std::int64_t* out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && first != last;
}

// "a/q" or "a"; the fraction must already be in lowest terms with q >= 1.
bool parse_fraction(const std::string& s, std::int64_t* a, std::int64_t* q) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    *q = 1;
    return parse_int(s, a);
  }
  if (!parse_int(trim(s.substr(0, slash)), a) || !parse_int(trim(s.substr(slash + 1)), q)) return false;
  return *q >= 1;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

template <class F>
void for_each_data_line(std::istream& in, F&& f) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    f(line, line_no);
  }
}

}  // namespace

RationalSet read_rational_set(std::istream& in) {
  std::vector<ReducedRational> values;
  std::set<ReducedRational> seen;
  for_each_data_line(in, [&](const std::string& line, std::size_t no) {
    if (line[0] == '#') return;
    std::int64_t a = 0;
    std::int64_t q = 0;
    if (line.find('/') == std::string::npos || !parse_fraction(line, &a, &q)) {
      throw ParseError("expected a fraction 'a/q', got '" + line + "'", no);
    }
    if (std::gcd(a, q) != 1) throw ParseError("fraction '" + line + "' is not reduced", no);
    if (a < 1 || a > q) throw ParseError("fraction '" + line + "' is outside (0, 1]", no);
    const auto r = reduce(a, q);
    if (!seen.insert(r).second) throw ParseError("duplicate fraction '" + line + "'", no);
    values.push_back(r);
  });
  return RationalSet::from_elements(std::move(values));
}

RationalSet load_rational_set(const std::string& path) {
  auto in = open(path);
  return read_rational_set(in);
}

void write_rational_set(std::ostream& out, const RationalSet& B) {
  for (const auto& r : B.elements()) out << r.num() << '/' << r.den() << '\n';
}

std::vector<Rational> read_signed_rationals(std::istream& in) {
  std::vector<Rational> out;
  for_each_data_line(in, [&](const std::string& line, std::size_t no) {
    if (line[0] == '#') return;
    std::int64_t a = 0;
    std::int64_t q = 0;
    if (!parse_fraction(line, &a, &q)) throw ParseError("expected 'a/q' or an integer, got '" + line + "'", no);
    if (std::gcd(a, q) != 1) throw ParseError("fraction '" + line + "' is not reduced", no);
    out.push_back(Rational::fraction(a, q));
  });
  return out;
}

std::vector<Rational> load_signed_rationals(const std::string& path) {
  auto in = open(path);
  return read_signed_rationals(in);
}

IntegerSet read_integer_set(std::istream& in) {
  std::int64_t N = 0;
  bool have_N = false;
  std::vector<std::int64_t> elems;
  std::set<std::int64_t> seen;
  for_each_data_line(in, [&](const std::string& line, std::size_t no) {
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("N=", 0) != 0 && body.rfind("N =", 0) != 0) return;
      if (have_N) throw ParseError("repeated N header", no);
      const std::string value = trim(body.substr(body.find('=') + 1));
      if (!parse_int(value, &N) || N < 1) throw ParseError("bad N header '" + line + "'", no);
      have_N = true;
      return;
    }
    if (!have_N) throw ParseError("element before the '# N=<value>' header", no);
    std::int64_t x = 0;
    if (!parse_int(line, &x)) throw ParseError("expected an integer, got '" + line + "'", no);
    if (x < 1 || x > N) throw ParseError("element " + line + " is outside [1, N]", no);
    if (!seen.insert(x).second) throw ParseError("duplicate element " + line, no);
    elems.push_back(x);
  });
  if (!have_N) throw ParseError("missing '# N=<value>' header", 0);
  return IntegerSet::from_elements(N, std::move(elems));
}

IntegerSet load_integer_set(const std::string& path) {
  auto in = open(path);
  return read_integer_set(in);
}

void write_integer_set(std::ostream& out, const IntegerSet& A) {
  out << "# N=" << A.N() << '\n';
  for (const auto a : A) out << a << '\n';
}

void save_integer_set(const std::string& path, const IntegerSet& A) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  write_integer_set(out, A);
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

}  // namespace sqdiff
