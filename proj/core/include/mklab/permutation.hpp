#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mklab/nc_partition.hpp"

namespace mklab {

/// Conjugacy-class label of S_k: an integer partition of k, parts descending.
class CycleType {
 public:
  /// Throws std::invalid_argument on non-positive parts. Parts are sorted.
  explicit CycleType(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int total() const noexcept { return total_; }
  /// Sum of (part - 1): the length of any permutation of this type.
  int length() const noexcept { return total_ - static_cast<int>(parts_.size()); }

  std::string to_string() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType& a, const CycleType& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// All integer partitions of k in reverse lexicographic order ([k] first).
std::vector<CycleType> all_cycle_types(int k);

/// Element of S_k as an image array over {1..k}. Cycle structure is
/// computed once at construction; values are immutable afterwards.
class Permutation {
 public:
  /// images[i-1] = sigma(i). Throws std::invalid_argument unless a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int k);
  /// gamma_k = (1, 2, ..., k).
  static Permutation full_cycle(int k);
  /// Product of disjoint cycles; points not mentioned are fixed.
  static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles);
  /// Canonical representative: consecutive runs 1..p1, p1+1..p1+p2, ...
  static Permutation representative(const CycleType& type);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;

  /// Cycles, each starting at its smallest point, ordered by that point.
  /// Fixed points appear as 1-cycles.
  const std::vector<std::vector<int>>& cycles() const noexcept { return cycles_; }
  int cycle_count() const noexcept { return static_cast<int>(cycles_.size()); }
  int length() const noexcept { return size() - cycle_count(); }
  CycleType cycle_type() const;

  /// "(1,7)(2,5,6)(3)(4)(8,9)"
  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
  std::vector<std::vector<int>> cycles_;
};

/// Composition, right factor applied first: (a * b)(i) = a(b(i)).
Permutation operator*(const Permutation& a, const Permutation& b);

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// Minimal number of transpositions: k - #cycles.
inline int length(const Permutation& sigma) { return sigma.length(); }

/// |sigma| + |sigma^-1 target| == |target|.
bool is_geodesic(const Permutation& sigma, const Permutation& target);

/// Product over blocks of the increasing cycle on each block.
Permutation embed_nc(const NonCrossingPartition& rho);

/// embed_nc(rho)^-1 * gamma_k.
Permutation complement_via_group(const NonCrossingPartition& rho);

/// gamma_k^(1) gamma_k^(2) = (1..k)(k+1..2k) in S_2k.
Permutation two_cycle_target(int k);

/// Largest 2k handled by brute force over S_2k.
inline constexpr int kMaxExhaustiveTwoCycle = 8;
/// Largest k handled through the NC(k) x NC(k) image.
inline constexpr int kMaxTwoCyclePairs = 5;

struct GeodesicPair {
  Permutation sigma;
  Permutation pi;
};

/// All (sigma, pi) in S_2k with |sigma| + |sigma^-1 pi| + |pi^-1 target| = 2k - 2,
/// target = two_cycle_target(k). Sorted by (sigma, pi). Brute force when
/// 2k <= kMaxExhaustiveTwoCycle, else built from the product of NC lattices;
/// throws SizeLimitError beyond kMaxTwoCyclePairs.
std::vector<GeodesicPair> geodesic_pairs_two_cycle(int k);

/// Visits every element of S_k in lexicographic order of images.
template <class Visitor>
void for_each_permutation(int k, Visitor&& visit);

// ---------------------------------------------------------------------------

template <class Visitor>
void for_each_permutation(int k, Visitor&& visit) {
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 1);
  do {
    visit(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

}  // namespace mklab
