#include "sqdiff/fourier.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sqdiff/error.hpp"

namespace sqdiff {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;
constexpr std::size_t kAnchorEvery = 128;

long double frac_part(long double x) { return x - std::floor(x); }

// e(f * g) with the product reduced mod 1 in extended precision; g is
// assumed already reduced to [0, 1).
Complex unit(std::int64_t f, long double g) {
  const long double p = frac_part(static_cast<long double>(f) * g);
  const double angle = static_cast<double>(kTwoPi * p);
  return {std::cos(angle), std::sin(angle)};
}

// Neumaier summation of one real component.
struct CompensatedSum {
  double sum = 0;
  double comp = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

TrigPoly::TrigPoly(std::vector<std::int64_t> freqs, std::vector<double> coefs)
    : freqs_(std::move(freqs)), coefs_(std::move(coefs)) {
  if (freqs_.size() != coefs_.size()) throw InvalidArgument("TrigPoly needs one coefficient per frequency");
}

TrigPoly TrigPoly::indicator(const IntegerSet& A) {
  return TrigPoly(A.elements(), std::vector<double>(A.size(), 1.0));
}

TrigPoly TrigPoly::squares_weight(std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  const auto M = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(N)));
  const double root = std::sqrt(static_cast<double>(N));
  std::vector<std::int64_t> f;
  std::vector<double> c;
  for (std::int64_t m = 1; m <= M; ++m) {
    f.push_back(m * m);
    c.push_back(2.0 * static_cast<double>(m) / root);
  }
  return TrigPoly(std::move(f), std::move(c));
}

Complex TrigPoly::operator()(double gamma) const {
  const long double g = frac_part(static_cast<long double>(gamma));
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t j = 0; j < freqs_.size(); ++j) {
    const Complex z = unit(freqs_[j], g);
    re.add(coefs_[j] * z.real());
    im.add(coefs_[j] * z.imag());
  }
  return {re.value(), im.value()};
}

std::vector<Complex> TrigPoly::grid(double gamma0, double step, std::size_t count) const {
  std::vector<long double> re(count, 0.0L);
  std::vector<long double> im(count, 0.0L);
  const long double g0 = frac_part(static_cast<long double>(gamma0));
  const long double h = static_cast<long double>(step);
  for (std::size_t j = 0; j < freqs_.size(); ++j) {
    const std::int64_t f = freqs_[j];
    const double c = coefs_[j];
    const long double base = frac_part(static_cast<long double>(f) * g0);
    const long double inc = frac_part(static_cast<long double>(f) * h);
    const double rot_angle = static_cast<double>(kTwoPi * inc);
    const Complex rot(std::cos(rot_angle), std::sin(rot_angle));
    Complex z;
    for (std::size_t i = 0; i < count; ++i) {
      if (i % kAnchorEvery == 0) {
        const double angle =
            static_cast<double>(kTwoPi * frac_part(base + static_cast<long double>(i) * inc));
        z = Complex(std::cos(angle), std::sin(angle));
      } else {
        z *= rot;
      }
      re[i] += c * z.real();
      im[i] += c * z.imag();
    }
  }
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = Complex(static_cast<double>(re[i]), static_cast<double>(im[i]));
  return out;
}

Complex exp_sum(const IntegerSet& A, double gamma) { return TrigPoly::indicator(A)(gamma); }

Complex interval_sum(std::int64_t N, double gamma) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  const double t = gamma - std::nearbyint(gamma);
  if (t == 0) return {static_cast<double>(N), 0.0};
  const long double lt = t;
  const long double nt = static_cast<long double>(N) * lt;
  // sin(pi N t) with N t reduced mod 2.
  const long double reduced = nt - 2.0L * std::floor(nt / 2.0L);
  const long double ratio =
      std::sin(std::numbers::pi_v<long double> * reduced) / std::sin(std::numbers::pi_v<long double> * lt);
  const long double phase = frac_part((static_cast<long double>(N) + 1.0L) * lt / 2.0L);
  const double angle = static_cast<double>(kTwoPi * phase);
  return Complex(std::cos(angle), std::sin(angle)) * static_cast<double>(ratio);
}

BalancedTransform::BalancedTransform(const IntegerSet& A)
    : poly_(TrigPoly::indicator(A)), N_(A.N()), size_(A.size()) {}

Complex BalancedTransform::operator()(double gamma) const {
  // alpha * D_N computed as |A| * D_N / N so that integer g gives |A| exactly.
  return poly_(gamma) - interval_sum(N_, gamma) * static_cast<double>(size_) / static_cast<double>(N_);
}

std::vector<Complex> BalancedTransform::grid(double gamma0, double step, std::size_t count) const {
  std::vector<Complex> out = poly_.grid(gamma0, step, count);
  for (std::size_t i = 0; i < count; ++i) {
    const double gamma = static_cast<double>(static_cast<long double>(gamma0) + static_cast<long double>(i) * step);
    out[i] -= interval_sum(N_, gamma) * static_cast<double>(size_) / static_cast<double>(N_);
  }
  return out;
}

Complex balanced_exp_sum(const IntegerSet& A, double gamma) { return BalancedTransform(A)(gamma); }

Complex W_hat(double gamma, std::int64_t N) { return TrigPoly::squares_weight(N)(gamma); }

Complex gauss_sum(std::int64_t a, std::int64_t q) {
  if (q < 1) throw InvalidArgument("gauss_sum needs q >= 1");
  if (std::gcd(a, q) != 1) throw PreconditionError("gauss_sum needs gcd(a, q) = 1");
  long double re = 0;
  long double im = 0;
  const std::int64_t ar = ((a % q) + q) % q;
  for (std::int64_t n = 1; n <= q; ++n) {
    const auto r = static_cast<std::int64_t>(static_cast<__int128>(ar) * n % q * n % q);
    const long double angle = kTwoPi * static_cast<long double>(r) / static_cast<long double>(q);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

CorrelationResult correlation_count(const IntegerSet& A) {
  CorrelationResult out;
  if (A.size() < 2) return out;
  const std::int64_t N = A.N();
  const std::int64_t top = A.elements().back();
  std::vector<bool> present(static_cast<std::size_t>(top) + 1, false);
  for (auto a : A) present[static_cast<std::size_t>(a)] = true;
  const double root = std::sqrt(static_cast<double>(N));
  long double total = 0;
  for (const std::int64_t a : A) {
    for (std::int64_t n = 1; a + n * n <= top; ++n) {
      const std::int64_t b = a + n * n;
      if (!present[static_cast<std::size_t>(b)]) continue;
      ++out.pairs;
      total += 2.0L * static_cast<long double>(n) / root;
      if (!out.witness || b < out.witness->a || (b == out.witness->a && n < out.witness->n)) {
        out.witness = SquareWitness{b, a, n};
      }
    }
  }
  out.value = static_cast<double>(total);
  return out;
}

namespace {

double q_log_q(std::int64_t q) { return static_cast<double>(q) * std::log(static_cast<double>(q)); }

void check_fraction(std::int64_t a, std::int64_t q, std::int64_t N) {
  if (q < 1 || N < 1) throw InvalidArgument("q and N must be >= 1");
  if (std::gcd(a, q) != 1) throw PreconditionError("needs gcd(a, q) = 1");
}

}  // namespace

double weight_arc_ratio(std::int64_t a, std::int64_t q, double beta, std::int64_t N) {
  check_fraction(a, q, N);
  const double gamma = static_cast<double>(a) / static_cast<double>(q) + beta;
  const double bound = std::sqrt(static_cast<double>(N) / static_cast<double>(q)) +
                       std::sqrt(q_log_q(q)) * (1.0 + std::abs(beta) * static_cast<double>(N));
  return std::abs(W_hat(gamma, N)) / bound;
}

double weight_gauss_ratio(std::int64_t a, std::int64_t q, double beta, std::int64_t N) {
  check_fraction(a, q, N);
  if (q < 2) throw InvalidArgument("identity ratio needs q >= 2");
  const TrigPoly W = TrigPoly::squares_weight(N);
  const double gamma = static_cast<double>(a) / static_cast<double>(q) + beta;
  const Complex main = gauss_sum(a, q) / static_cast<double>(q) * W(beta);
  return std::abs(W(gamma) - main) / (std::sqrt(q_log_q(q)) * (1.0 + std::abs(beta) * static_cast<double>(N)));
}

double w_decay_ratio(double beta, std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (!(beta > 0)) throw InvalidArgument("beta must be > 0");
  const double root = std::sqrt(static_cast<double>(N));
  return std::abs(W_hat(beta, N)) / std::min(root, 1.0 / (beta * root));
}

}  // namespace sqdiff
