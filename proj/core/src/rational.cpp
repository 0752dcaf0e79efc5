#include "sqdiff/rational.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs_u128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

// Reduces num/den (den > 0) and stores it in out if both parts fit in
// [-kMax, kMax].  Returns false otherwise.
bool store_reduced(i128 num, i128 den, std::int64_t* out_num, std::int64_t* out_den) {
  const u128 g = gcd_u128(abs_u128(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num > kMax || num < -kMax || den > kMax) return false;
  *out_num = static_cast<std::int64_t>(num);
  *out_den = static_cast<std::int64_t>(den);
  return true;
}

BigInt to_big_int(std::int64_t v) { return BigInt(v); }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string ReducedRational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

ReducedRational reduce(std::int64_t a, std::int64_t q) {
  if (q == 0) throw InvalidArgument("invalid denominator 0");
  if (q < 0) {
    if (a == std::numeric_limits<std::int64_t>::min() || q == std::numeric_limits<std::int64_t>::min()) {
      throw InvalidArgument("fraction out of range");
    }
    a = -a;
    q = -q;
  }
  const std::int64_t g = std::gcd(a, q);
  const std::int64_t num = a / g;
  const std::int64_t den = q / g;
  if (num < 1 || num > den) {
    throw InvalidArgument("fraction " + std::to_string(a) + "/" + std::to_string(q) + " is not in (0, 1]");
  }
  return ReducedRational(num, den);
}

Rational::Rational(const BigRational& value) : big_(std::make_shared<const BigRational>(value)) {
  normalize_big();
}

Rational Rational::fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("invalid denominator 0");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Rational r;
  if (!store_reduced(n, d, &r.num_, &r.den_)) {
    return Rational(BigRational(to_big_int(num), to_big_int(den)));
  }
  return r;
}

void Rational::normalize_big() {
  if (!big_) return;
  const BigInt n = boost::multiprecision::numerator(*big_);
  const BigInt d = boost::multiprecision::denominator(*big_);
  const BigInt lim(kMax);
  if (n <= lim && n >= -lim && d <= lim) {
    num_ = n.convert_to<std::int64_t>();
    den_ = d.convert_to<std::int64_t>();
    big_.reset();
  }
}

BigInt Rational::numerator() const {
  return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
}

BigInt Rational::denominator() const {
  return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_);
}

BigRational Rational::to_big() const { return big_ ? *big_ : BigRational(to_big_int(num_), to_big_int(den_)); }

double Rational::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

long double Rational::to_long_double() const {
  if (big_) return big_->convert_to<long double>();
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

int Rational::sign() const noexcept {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
}

Rational Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  const BigInt n = boost::multiprecision::numerator(*big_);
  const BigInt d = boost::multiprecision::denominator(*big_);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  return Rational(BigRational(q));
}

std::string Rational::to_string() const {
  if (big_) {
    const BigInt d = boost::multiprecision::denominator(*big_);
    const BigInt n = boost::multiprecision::numerator(*big_);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
  }
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const noexcept {
  if (big_) return std::hash<std::string>{}(big_->str());
  return static_cast<std::size_t>(mix64(static_cast<std::uint64_t>(num_) ^ mix64(static_cast<std::uint64_t>(den_))));
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(BigRational(-*big_));
}

bool Rational::try_add_small(const Rational& x, const Rational& y, Rational* out) noexcept {
  if (x.big_ || y.big_) return false;
  const i128 num = static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_;
  const i128 den = static_cast<i128>(x.den_) * y.den_;
  std::int64_t n = 0;
  std::int64_t d = 1;
  if (!store_reduced(num, den, &n, &d)) return false;
  out->num_ = n;
  out->den_ = d;
  out->big_.reset();
  return true;
}

Rational operator+(const Rational& x, const Rational& y) {
  Rational r;
  if (Rational::try_add_small(x, y, &r)) return r;
  return Rational(x.to_big() + y.to_big());
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    Rational r;
    if (store_reduced(static_cast<i128>(x.num_) * y.num_, static_cast<i128>(x.den_) * y.den_, &r.num_, &r.den_)) {
      return r;
    }
  }
  return Rational(x.to_big() * y.to_big());
}

bool operator==(const Rational& x, const Rational& y) {
  // Both sides are canonical: small whenever the value fits.
  if (!x.big_ && !y.big_) return x.num_ == y.num_ && x.den_ == y.den_;
  if (static_cast<bool>(x.big_) != static_cast<bool>(y.big_)) return false;
  return *x.big_ == *y.big_;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) {
    const i128 lhs = static_cast<i128>(x.num_) * y.den_;
    const i128 rhs = static_cast<i128>(y.num_) * x.den_;
    return lhs <=> rhs;
  }
  const BigRational a = x.to_big();
  const BigRational b = y.to_big();
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational rational_sum(std::span<const SignedTerm> terms, OverflowPolicy policy) {
  if (terms.empty()) throw InvalidArgument("rational_sum needs at least one term");
  Rational acc;
  for (const SignedTerm& t : terms) {
    const Rational v = t.negated ? -Rational(t.value) : Rational(t.value);
    Rational next;
    if (Rational::try_add_small(acc, v, &next)) {
      acc = next;
    } else if (policy == OverflowPolicy::signal) {
      throw OverflowError("rational_sum: 64-bit overflow at term " + t.value.to_string());
    } else {
      acc = acc + v;
    }
  }
  return acc;
}

RationalSet RationalSet::from_elements(std::vector<ReducedRational> elements,
                                       std::optional<std::int64_t> denominator_cap,
                                       std::optional<std::int64_t> per_den_cap) {
  std::sort(elements.begin(), elements.end());
  if (auto dup = std::adjacent_find(elements.begin(), elements.end()); dup != elements.end()) {
    throw PreconditionError("duplicate element " + dup->to_string());
  }
  std::int64_t max_den = 1;
  for (const auto& r : elements) max_den = std::max(max_den, r.den());
  const std::int64_t cap = denominator_cap.value_or(max_den);
  if (cap < 1) throw InvalidArgument("denominator cap must be >= 1");
  if (max_den > cap) {
    throw PreconditionError("denominator " + std::to_string(max_den) + " exceeds cap " + std::to_string(cap));
  }
  RationalSet set;
  set.elements_ = std::move(elements);
  set.denominator_cap_ = cap;
  set.per_den_cap_ = per_den_cap;
  if (per_den_cap) {
    for (const auto& [q, count] : set.denominator_counts()) {
      if (count > *per_den_cap) {
        throw PreconditionError("denominator " + std::to_string(q) + " appears " + std::to_string(count) +
                                " times, cap is " + std::to_string(*per_den_cap));
      }
    }
  }
  return set;
}

bool RationalSet::contains(const ReducedRational& r) const {
  return std::binary_search(elements_.begin(), elements_.end(), r);
}

std::map<std::int64_t, std::int64_t> RationalSet::denominator_counts() const {
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& r : elements_) ++counts[r.den()];
  return counts;
}

std::int64_t RationalSet::max_per_denominator() const {
  std::int64_t best = 0;
  for (const auto& [q, count] : denominator_counts()) best = std::max(best, count);
  return best;
}

std::vector<Rational> RationalSet::values() const {
  return std::vector<Rational>(elements_.begin(), elements_.end());
}

std::vector<ReducedRational> rationals_with_denominator(std::int64_t q) {
  if (q < 1) throw InvalidArgument("denominator must be >= 1");
  std::vector<ReducedRational> out;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) == 1) out.push_back(reduce(a, q));
  }
  return out;
}

RationalSet enumerate_rationals(std::int64_t Q, std::int64_t limit) {
  if (Q < 1) throw InvalidArgument("Q must be >= 1");
  if (Q > limit) {
    throw ResourceError("Q = " + std::to_string(Q) + " exceeds the enumeration limit " + std::to_string(limit));
  }
  std::vector<ReducedRational> all;
  for (std::int64_t q = 1; q <= Q; ++q) {
    auto level = rationals_with_denominator(q);
    all.insert(all.end(), level.begin(), level.end());
  }
  return RationalSet::from_elements(std::move(all), Q);
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw InvalidArgument("euler_phi needs n >= 1");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace sqdiff
