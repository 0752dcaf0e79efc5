#include "sqdiff/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqdiff/error.hpp"
#include "sqdiff/parallel.hpp"
#include "sqdiff/random.hpp"

namespace sqdiff {

namespace {

// Bitmap lookups are used when N is at most this many bits (16 MiB).
constexpr std::int64_t kBitmapLimit = std::int64_t{1} << 27;

class Membership {
 public:
  explicit Membership(const IntegerSet& A) : A_(A) {
    if (A.N() <= kBitmapLimit) {
      bits_.assign(static_cast<std::size_t>(A.N()) + 1, false);
      for (auto a : A) bits_[static_cast<std::size_t>(a)] = true;
    }
  }
  bool operator()(std::int64_t x) const {
    if (x < 1 || x > A_.N()) return false;
    if (!bits_.empty()) return bits_[static_cast<std::size_t>(x)];
    return A_.contains(x);
  }

 private:
  const IntegerSet& A_;
  std::vector<bool> bits_;
};

// Greedy insertion into `present` over candidates in the given order.
std::vector<std::int64_t> greedy_insert(std::int64_t N, const std::vector<std::int64_t>& order) {
  std::vector<bool> present(static_cast<std::size_t>(N) + 1, false);
  std::vector<std::int64_t> chosen;
  for (const std::int64_t x : order) {
    bool ok = true;
    for (std::int64_t s = 1; ok; ++s) {
      const std::int64_t sq = s * s;
      const bool below = x - sq >= 1;
      const bool above = x + sq <= N;
      if (!below && !above) break;
      if (below && present[static_cast<std::size_t>(x - sq)]) ok = false;
      if (above && present[static_cast<std::size_t>(x + sq)]) ok = false;
    }
    if (ok) {
      present[static_cast<std::size_t>(x)] = true;
      chosen.push_back(x);
    }
  }
  return chosen;
}

void check_N(std::int64_t N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
}

}  // namespace

IntegerSet IntegerSet::from_elements(std::int64_t N, std::vector<std::int64_t> elements) {
  check_N(N);
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw InvalidArgument("duplicate element in integer set");
  }
  if (!elements.empty() && (elements.front() < 1 || elements.back() > N)) {
    throw InvalidArgument("integer set elements must lie in [1, N]");
  }
  IntegerSet s;
  s.N_ = N;
  s.elements_ = std::move(elements);
  return s;
}

bool IntegerSet::contains(std::int64_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && (r > UINT32_MAX || r * r > x)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= x) ++r;
  return r;
}

bool is_square(std::uint64_t x) {
  const std::uint64_t r = isqrt(x);
  return r * r == x;
}

std::optional<SquareWitness> find_square_difference(const IntegerSet& A) {
  if (A.size() < 2) return std::nullopt;
  const Membership member(A);
  const auto& el = A.elements();
  const std::int64_t lowest = el.front();
  std::vector<std::optional<SquareWitness>> found(thread_count());
  parallel_for(el.size(), [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::int64_t a = el[i];
      for (std::int64_t s = 1; a - s * s >= lowest; ++s) {
        if (member(a - s * s)) {
          found[chunk] = SquareWitness{a, a - s * s, s};
          return;
        }
      }
    }
  });
  for (const auto& w : found) {
    if (w) return w;
  }
  return std::nullopt;
}

IntegerSet greedy_sdf(std::int64_t N) {
  check_N(N);
  std::vector<std::int64_t> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 1);
  return IntegerSet::from_elements(N, greedy_insert(N, order));
}

IntegerSet planted_sdf(std::int64_t N, std::int64_t q, std::int64_t r, std::uint64_t seed, double keep) {
  check_N(N);
  if (q < 1 || r < 1 || r > q) throw InvalidArgument("planted_sdf needs 1 <= r <= q");
  if (!(keep > 0 && keep <= 1)) throw InvalidArgument("keep probability must be in (0, 1]");
  Rng rng(seed);
  std::vector<std::int64_t> order;
  for (std::int64_t x = r; x <= N; x += q) {
    if (keep >= 1 || rng.bernoulli(keep)) order.push_back(x);
  }
  return IntegerSet::from_elements(N, greedy_insert(N, order));
}

IntegerSet random_sdf(std::int64_t N, std::uint64_t seed) {
  check_N(N);
  std::vector<std::int64_t> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 1);
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform(0, i - 1)]);
  }
  return IntegerSet::from_elements(N, greedy_insert(N, order));
}

IntegerSet random_subset(std::int64_t N, double p, std::uint64_t seed) {
  check_N(N);
  Rng rng(seed);
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= N; ++x) {
    if (rng.bernoulli(p)) out.push_back(x);
  }
  return IntegerSet::from_elements(N, std::move(out));
}

}  // namespace sqdiff
