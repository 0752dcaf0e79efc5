#pragma once

// Plain-text set files.
//
// Rational sets: one reduced fraction "a/q" per line, values in (0, 1].
// Signed rational lists: "a/q" or "a" per line, any sign, reduced.
// Integer sets: a "# N=<value>" header, then one integer per line.
// Lines starting with '#' are comments; blank lines are skipped.

#include <iosfwd>
#include <string>
#include <vector>

#include "sqdiff/rational.hpp"
#include "sqdiff/sdf.hpp"

namespace sqdiff {

RationalSet read_rational_set(std::istream& in);
RationalSet load_rational_set(const std::string& path);
void write_rational_set(std::ostream& out, const RationalSet& B);

std::vector<Rational> read_signed_rationals(std::istream& in);
std::vector<Rational> load_signed_rationals(const std::string& path);

// Throws ParseError when the header is missing or repeated, or an element
// is malformed, duplicated or outside [1, N].
IntegerSet read_integer_set(std::istream& in);
IntegerSet load_integer_set(const std::string& path);
void write_integer_set(std::ostream& out, const IntegerSet& A);
void save_integer_set(const std::string& path, const IntegerSet& A);

}  // namespace sqdiff
