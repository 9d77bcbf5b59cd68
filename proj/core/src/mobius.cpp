#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "mklab/errors.hpp"
#include "mklab/nc_partition.hpp"

namespace mklab {

namespace {

// Blocks of `finer` lying inside each block of `coarser`, relabelled onto
// 1..|B| by position within B.
std::vector<NonCrossingPartition> local_pieces(const NonCrossingPartition& finer,
                                               const NonCrossingPartition& coarser) {
  std::vector<NonCrossingPartition> pieces;
  pieces.reserve(coarser.block_count());
  std::vector<int> position(static_cast<std::size_t>(coarser.ground_size()) + 1, 0);
  for (const auto& big : coarser.blocks()) {
    for (std::size_t j = 0; j < big.size(); ++j) position[static_cast<std::size_t>(big[j])] = static_cast<int>(j) + 1;
  }
  std::vector<std::vector<Block>> local(coarser.block_count());
  for (const auto& small : finer.blocks()) {
    Block relabelled;
    for (int x : small) relabelled.push_back(position[static_cast<std::size_t>(x)]);
    local[static_cast<std::size_t>(coarser.block_of(small.front()))].push_back(std::move(relabelled));
  }
  for (std::size_t bi = 0; bi < coarser.block_count(); ++bi) {
    pieces.emplace_back(static_cast<int>(coarser.blocks()[bi].size()), std::move(local[bi]));
  }
  return pieces;
}

void require_leq(const NonCrossingPartition& finer, const NonCrossingPartition& coarser,
                 const char* who) {
  if (finer.ground_size() != coarser.ground_size() || !leq(finer, coarser)) {
    throw PosetError(std::string(who) + ": " + finer.to_string() + " is not below " +
                     coarser.to_string());
  }
}

class MobiusCache {
 public:
  bool find(const std::vector<int>& key, Rational& value) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    value = it->second;
    return true;
  }

  void store(const std::vector<int>& key, const Rational& value) {
    std::lock_guard lock(mutex_);
    table_.emplace(key, value);
  }

 private:
  std::mutex mutex_;
  std::map<std::vector<int>, Rational> table_;
};

MobiusCache& mobius_cache() {
  static MobiusCache cache;
  return cache;
}

}  // namespace

std::vector<int> interval_type(const NonCrossingPartition& finer,
                               const NonCrossingPartition& coarser) {
  require_leq(finer, coarser, "interval_type");
  std::vector<int> sizes;
  for (const auto& piece : local_pieces(finer, coarser)) {
    const auto complement = kreweras(piece);
    for (const auto& b : complement.blocks()) {
      if (b.size() > 1) sizes.push_back(static_cast<int>(b.size()));
    }
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

std::vector<NonCrossingPartition> interval_elements(const NonCrossingPartition& finer,
                                                    const NonCrossingPartition& coarser) {
  require_leq(finer, coarser, "interval_elements");

  // Within each block of `coarser`, every non-crossing way of merging the
  // finer blocks it contains. Merges in different coarse blocks never cross
  // each other because the coarse blocks do not.
  std::vector<std::vector<std::vector<Block>>> options;
  for (const auto& big : coarser.blocks()) {
    std::vector<const Block*> parts;
    for (const auto& small : finer.blocks()) {
      if (coarser.block_of(small.front()) == coarser.block_of(big.front())) parts.push_back(&small);
    }
    std::vector<std::vector<Block>> merges;
    std::vector<int> rgs(parts.size(), 0);
    // Restricted growth strings over the finer blocks.
    std::function<void(std::size_t, int)> visit = [&](std::size_t i, int groups) {
      if (i == parts.size()) {
        std::vector<Block> merged(static_cast<std::size_t>(groups));
        for (std::size_t j = 0; j < parts.size(); ++j) {
          auto& dst = merged[static_cast<std::size_t>(rgs[j])];
          dst.insert(dst.end(), parts[j]->begin(), parts[j]->end());
        }
        // Validity check on the coarse block relabelled to 1..|big|.
        std::vector<Block> local;
        for (const auto& m : merged) {
          Block l;
          for (int x : m) l.push_back(static_cast<int>(std::lower_bound(big.begin(), big.end(), x) - big.begin()) + 1);
          local.push_back(std::move(l));
        }
        try {
          NonCrossingPartition probe(static_cast<int>(big.size()), std::move(local));
        } catch (const std::invalid_argument&) {
          return;
        }
        merges.push_back(std::move(merged));
        return;
      }
      for (int g = 0; g <= groups; ++g) {
        rgs[i] = g;
        visit(i + 1, std::max(groups, g + 1));
      }
    };
    visit(0, 0);
    options.push_back(std::move(merges));
  }

  std::vector<NonCrossingPartition> out;
  std::vector<Block> current;
  std::function<void(std::size_t)> product = [&](std::size_t i) {
    if (i == options.size()) {
      out.emplace_back(finer.ground_size(), current);
      return;
    }
    for (const auto& choice : options[i]) {
      const auto mark = current.size();
      current.insert(current.end(), choice.begin(), choice.end());
      product(i + 1);
      current.resize(mark);
    }
  };
  product(0);
  std::sort(out.begin(), out.end());
  return out;
}

Rational mobius_nc(const NonCrossingPartition& finer, const NonCrossingPartition& coarser) {
  require_leq(finer, coarser, "mobius_nc");
  const auto key = interval_type(finer, coarser);
  if (key.empty()) return Rational(1);

  Rational value;
  if (mobius_cache().find(key, value)) return value;

  // mu(finer, coarser) = - sum over finer < sigma <= coarser of mu(sigma, coarser)
  Rational sum(0);
  for (const auto& sigma : interval_elements(finer, coarser)) {
    if (sigma == finer) continue;
    sum += mobius_nc(sigma, coarser);
  }
  value = -sum;
  mobius_cache().store(key, value);
  return value;
}

}  // namespace mklab
