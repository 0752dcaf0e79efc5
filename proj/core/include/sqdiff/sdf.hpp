#pragma once

// Subsets of [N] = {1..N} without square differences: a - b = n^2, n >= 1.

#include <cstdint>
#include <optional>
#include <vector>

namespace sqdiff {

class IntegerSet {
 public:
  IntegerSet() = default;

  // Sorts; throws InvalidArgument on duplicates, N < 1 or elements outside [1, N].
  static IntegerSet from_elements(std::int64_t N, std::vector<std::int64_t> elements);

  std::int64_t N() const noexcept { return N_; }
  const std::vector<std::int64_t>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  double density() const noexcept { return static_cast<double>(elements_.size()) / static_cast<double>(N_); }
  bool contains(std::int64_t x) const;
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

 private:
  std::int64_t N_ = 1;
  std::vector<std::int64_t> elements_;
};

std::uint64_t isqrt(std::uint64_t x);
bool is_square(std::uint64_t x);

struct SquareWitness {
  std::int64_t a;  // larger element
  std::int64_t b;
  std::int64_t n;  // a - b = n^2
};

// nullopt when A is square-difference free.  The witness is the one with
// the smallest a, then the smallest n.  O(|A| sqrt N).
std::optional<SquareWitness> find_square_difference(const IntegerSet& A);
inline bool is_sdf(const IntegerSet& A) { return !find_square_difference(A).has_value(); }

// Scans 1..N ascending and keeps every integer that leaves the set SDF.
IntegerSet greedy_sdf(std::int64_t N);

// Greedy scan of the residue class r mod q in [N].  With keep < 1 each
// candidate is first kept with probability `keep` (seeded).
IntegerSet planted_sdf(std::int64_t N, std::int64_t q, std::int64_t r, std::uint64_t seed = 0, double keep = 1.0);

// Greedy insertion in a seeded uniformly random order of [N]; the result is
// a maximal SDF set.
IntegerSet random_sdf(std::int64_t N, std::uint64_t seed);

// Uniform random subset of [N] where each element is present with
// probability p; not SDF in general.
IntegerSet random_subset(std::int64_t N, double p, std::uint64_t seed);

}  // namespace sqdiff
