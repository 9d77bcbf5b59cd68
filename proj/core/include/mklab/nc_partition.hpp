#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mklab/rational.hpp"

namespace mklab {

using Block = std::vector<int>;

/// Non-crossing partition of {1..k}, held in canonical form: every block
/// strictly increasing, blocks ordered by their minimum.
///
/// Construction validates disjointness, coverage and the non-crossing
/// condition; an instance is never in an invalid state.
class NonCrossingPartition {
 public:
  /// Throws std::invalid_argument if the blocks do not form a
  /// non-crossing partition of {1..k}. Block order and element order
  /// inside blocks are free; the result is canonicalised.
  NonCrossingPartition(int k, std::vector<Block> blocks);

  /// 0_k: all singletons.
  static NonCrossingPartition finest(int k);
  /// 1_k: one block.
  static NonCrossingPartition coarsest(int k);

  /// Parses "{1,7|2,5,6|3|4|8,9}". k defaults to the largest label.
  static NonCrossingPartition parse(std::string_view text, int k = 0);

  int ground_size() const noexcept { return k_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Index into blocks() of the block holding point i (1-based).
  int block_of(int i) const { return block_of_[static_cast<std::size_t>(i - 1)]; }

  std::vector<int> block_sizes() const;

  std::string to_string() const;

  friend bool operator==(const NonCrossingPartition&, const NonCrossingPartition&) = default;
  /// Lexicographic on the canonical block list, then ground size.
  friend std::strong_ordering operator<=>(const NonCrossingPartition& a,
                                          const NonCrossingPartition& b);

 private:
  NonCrossingPartition() = default;
  void canonicalise_and_validate();

  int k_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
};

std::ostream& operator<<(std::ostream& os, const NonCrossingPartition& p);

/// Largest k accepted by enumerate_nc (C_12 = 208012 partitions).
inline constexpr int kMaxEnumerationSize = 12;

/// Every element of NC(k) once, in lexicographic order of canonical form.
/// The result is cached and shared; throws SizeLimitError outside
/// [1, kMaxEnumerationSize].
const std::vector<NonCrossingPartition>& enumerate_nc(int k);

/// Refinement order: every block of `finer` sits inside a block of `coarser`.
bool leq(const NonCrossingPartition& finer, const NonCrossingPartition& coarser);

/// Kreweras complement on the barred points, bars dropped.
NonCrossingPartition kreweras(const NonCrossingPartition& rho);

/// Last points of the blocks of K(rho); barred point i-bar reported as i.
/// Returned sorted ascending.
std::vector<int> kreweras_points(const NonCrossingPartition& rho);

/// Substitutes `inner` after point p of `outer`: labels of `outer` above p
/// shift up by inner's size, `inner` occupies [p+1, p+m].
/// Throws InsertionError unless p is a Kreweras point of `outer`.
NonCrossingPartition insert_at(const NonCrossingPartition& outer, int p,
                               const NonCrossingPartition& inner);

struct KrewerasDecomposition {
  NonCrossingPartition outer;
  NonCrossingPartition inner;
  int insertion_point;
  /// Support of the inner part inside the original ground set.
  int support_first;
  int support_last;
};

/// All Kreweras decompositions of rho, ordered by support (first, last).
/// There are exactly |rho| - 1 of them.
std::vector<KrewerasDecomposition> kreweras_decompositions(const NonCrossingPartition& rho);

/// Restriction of rho to [first, last], relabelled to start at 1. The
/// interval must be a union of blocks.
NonCrossingPartition restrict_to_interval(const NonCrossingPartition& rho, int first, int last);

/// Moebius function of the NC lattice on the interval [finer, coarser].
/// Computed by the sieve recursion over the actual interval, memoised on
/// the isomorphism type of the interval. Throws PosetError if not
/// finer <= coarser.
Rational mobius_nc(const NonCrossingPartition& finer, const NonCrossingPartition& coarser);

/// Isomorphism type of [finer, coarser]: the sizes (>= 2) of the blocks of
/// the relative Kreweras complements, sorted descending. The interval is
/// a product of full NC lattices of these sizes.
std::vector<int> interval_type(const NonCrossingPartition& finer,
                               const NonCrossingPartition& coarser);

/// All sigma with finer <= sigma <= coarser, in canonical order.
std::vector<NonCrossingPartition> interval_elements(const NonCrossingPartition& finer,
                                                    const NonCrossingPartition& coarser);

}  // namespace mklab
