#pragma once

// Exact bounded-denominator rational arithmetic.
//
// ReducedRational is an element of Q_{<=Q}: a reduced fraction a/q with
// 1 <= a <= q, i.e. a value in (0, 1].  Rational is a signed exact value
// with unbounded denominator; it runs on machine integers and promotes to
// Boost.Multiprecision when an intermediate result would overflow.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sqdiff {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class ReducedRational {
 public:
  constexpr ReducedRational() = default;  // 1/1

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend bool operator==(const ReducedRational&, const ReducedRational&) = default;
  friend std::strong_ordering operator<=>(const ReducedRational& x, const ReducedRational& y) noexcept {
    const __int128 lhs = static_cast<__int128>(x.num_) * y.den_;
    const __int128 rhs = static_cast<__int128>(y.num_) * x.den_;
    return lhs <=> rhs;
  }

 private:
  constexpr ReducedRational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
  friend ReducedRational reduce(std::int64_t a, std::int64_t q);

  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

// a/gcd(a,q) over q/gcd(a,q).  Throws InvalidArgument for q == 0 or when the
// reduced value is not in (0, 1].
ReducedRational reduce(std::int64_t a, std::int64_t q);

enum class OverflowPolicy { promote, signal };

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const ReducedRational& r) : num_(r.num()), den_(r.den()) {}  // NOLINT
  explicit Rational(const BigRational& value);

  // num/den normalised to lowest terms with positive denominator.
  static Rational fraction(std::int64_t num, std::int64_t den);

  bool is_small() const noexcept { return big_ == nullptr; }
  // Only meaningful when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  BigInt numerator() const;
  BigInt denominator() const;
  BigRational to_big() const;
  double to_double() const;
  long double to_long_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_integer() const;

  // Largest integer <= value, and value - floor(value) in [0, 1).
  Rational floor() const;
  Rational frac() const { return *this - floor(); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  std::string to_string() const;
  std::size_t hash() const noexcept;

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }

  friend bool operator==(const Rational& x, const Rational& y);
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  // Machine-width addition; false (and *out untouched) on overflow.
  static bool try_add_small(const Rational& x, const Rational& y, Rational* out) noexcept;

 private:
  void normalize_big();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept { return r.hash(); }
};

struct SignedTerm {
  ReducedRational value;
  bool negated = false;
};

// Exact signed sum.  With OverflowPolicy::signal an intermediate that does
// not fit in 64-bit numerator/denominator throws OverflowError.
Rational rational_sum(std::span<const SignedTerm> terms, OverflowPolicy policy = OverflowPolicy::promote);

// Finite set of elements of Q_{<=Q}, kept in increasing order of value.
class RationalSet {
 public:
  RationalSet() = default;

  // Validates: no duplicates, every den <= denominator_cap, and at most
  // per_den_cap elements per denominator when that cap is given.  The
  // denominator cap defaults to the largest denominator present.
  static RationalSet from_elements(std::vector<ReducedRational> elements,
                                   std::optional<std::int64_t> denominator_cap = std::nullopt,
                                   std::optional<std::int64_t> per_den_cap = std::nullopt);

  const std::vector<ReducedRational>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const ReducedRational& operator[](std::size_t i) const { return elements_[i]; }

  std::int64_t denominator_cap() const noexcept { return denominator_cap_; }
  std::optional<std::int64_t> per_den_cap() const noexcept { return per_den_cap_; }

  bool contains(const ReducedRational& r) const;
  std::map<std::int64_t, std::int64_t> denominator_counts() const;
  // max_q |B cap Q_{=q}|, 0 for the empty set.
  std::int64_t max_per_denominator() const;
  std::vector<Rational> values() const;

 private:
  std::vector<ReducedRational> elements_;
  std::int64_t denominator_cap_ = 1;
  std::optional<std::int64_t> per_den_cap_;
};

inline constexpr std::int64_t kDefaultEnumerationLimit = 4096;

// Exactly Q_{<=Q}.  Throws ResourceError when Q exceeds `limit`.
RationalSet enumerate_rationals(std::int64_t Q, std::int64_t limit = kDefaultEnumerationLimit);

// Q_{=q}.
std::vector<ReducedRational> rationals_with_denominator(std::int64_t q);

std::int64_t euler_phi(std::int64_t n);

}  // namespace sqdiff

template <>
struct std::hash<sqdiff::Rational> {
  std::size_t operator()(const sqdiff::Rational& r) const noexcept { return r.hash(); }
};
