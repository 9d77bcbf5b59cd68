#include "mklab/permutation.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "mklab/errors.hpp"

namespace mklab {

namespace {

// Cycle count of an image array without building the cycles.
int count_cycles(const std::vector<int>& images) {
  const auto n = images.size();
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j] - 1)) seen[j] = 1;
  }
  return cycles;
}

// images of a^-1 * b, written into out.
void inverse_times(const std::vector<int>& a_inverse, const std::vector<int>& b, std::vector<int>& out) {
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a_inverse[static_cast<std::size_t>(b[i] - 1)];
}

std::vector<int> invert(const std::vector<int>& images) {
  std::vector<int> inv(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) inv[static_cast<std::size_t>(images[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// CycleType

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("cycle type parts must be positive");
    total_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::string CycleType::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + "]";
}

std::vector<CycleType> all_cycle_types(int k) {
  if (k < 1) throw std::invalid_argument("all_cycle_types: k must be positive");
  std::vector<CycleType> out;
  std::vector<int> parts;
  std::function<void(int, int)> build = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      build(remaining - p, p);
      parts.pop_back();
    }
  };
  build(k, k);
  return out;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const auto n = images_.size();
  if (n == 0) throw std::invalid_argument("permutation of an empty set");
  std::vector<char> hit(n, 0);
  for (int x : images_) {
    if (x < 1 || static_cast<std::size_t>(x) > n || hit[static_cast<std::size_t>(x - 1)]) {
      throw std::invalid_argument("images do not form a permutation");
    }
    hit[static_cast<std::size_t>(x - 1)] = 1;
  }
  std::vector<char> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (std::size_t j = start; !seen[j]; j = static_cast<std::size_t>(images_[j] - 1)) {
      seen[j] = 1;
      cycle.push_back(static_cast<int>(j) + 1);
    }
    cycles_.push_back(std::move(cycle));
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::full_cycle(int k) {
  std::vector<int> images(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) images[static_cast<std::size_t>(i - 1)] = i % k + 1;
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(static_cast<std::size_t>(k), 0);
  for (int i = 1; i <= k; ++i) images[static_cast<std::size_t>(i - 1)] = i;
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (const auto& c : cycles) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const int from = c[j];
      if (from < 1 || from > k || used[static_cast<std::size_t>(from - 1)]) {
        throw std::invalid_argument("from_cycles: cycles are not disjoint subsets of [1,k]");
      }
      used[static_cast<std::size_t>(from - 1)] = 1;
      images[static_cast<std::size_t>(from - 1)] = c[(j + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::representative(const CycleType& type) {
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int p : type.parts()) {
    std::vector<int> c;
    for (int j = 0; j < p; ++j) c.push_back(next++);
    cycles.push_back(std::move(c));
  }
  return from_cycles(type.total(), cycles);
}

Permutation Permutation::inverse() const { return Permutation(invert(images_)); }

CycleType Permutation::cycle_type() const {
  std::vector<int> parts;
  parts.reserve(cycles_.size());
  for (const auto& c : cycles_) parts.push_back(static_cast<int>(c.size()));
  return CycleType(std::move(parts));
}

std::string Permutation::to_string() const {
  std::string out;
  for (const auto& c : cycles_) {
    out += '(';
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(c[j]);
    }
    out += ')';
  }
  return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<int> images(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) images[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(images));
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

bool is_geodesic(const Permutation& sigma, const Permutation& target) {
  if (sigma.size() != target.size()) throw std::invalid_argument("is_geodesic: degree mismatch");
  return sigma.length() + (sigma.inverse() * target).length() == target.length();
}

Permutation embed_nc(const NonCrossingPartition& rho) {
  return Permutation::from_cycles(rho.ground_size(), rho.blocks());
}

Permutation complement_via_group(const NonCrossingPartition& rho) {
  return embed_nc(rho).inverse() * Permutation::full_cycle(rho.ground_size());
}

Permutation two_cycle_target(int k) {
  std::vector<int> first;
  std::vector<int> second;
  for (int i = 1; i <= k; ++i) {
    first.push_back(i);
    second.push_back(k + i);
  }
  return Permutation::from_cycles(2 * k, {first, second});
}

std::vector<GeodesicPair> geodesic_pairs_two_cycle(int k) {
  if (k < 1) throw std::invalid_argument("geodesic_pairs_two_cycle: k must be positive");
  const Permutation target = two_cycle_target(k);
  const int n = 2 * k;
  const int full = n - 2;
  std::vector<GeodesicPair> out;

  if (n <= kMaxExhaustiveTwoCycle) {
    // |sigma| + |sigma^-1 pi| >= |pi| and |pi| + |pi^-1 t| >= |t|, so the
    // defining equality forces both to be tight: filter pi first.
    std::vector<std::vector<int>> all;
    for_each_permutation(n, [&](const Permutation& p) { all.push_back(p.images()); });
    std::vector<int> lengths(all.size());
    std::vector<std::vector<int>> inverses(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      lengths[i] = n - count_cycles(all[i]);
      inverses[i] = invert(all[i]);
    }
    std::vector<int> scratch(static_cast<std::size_t>(n));
    for (std::size_t pi = 0; pi < all.size(); ++pi) {
      inverse_times(inverses[pi], target.images(), scratch);
      if (lengths[pi] + (n - count_cycles(scratch)) != full) continue;
      for (std::size_t sigma = 0; sigma < all.size(); ++sigma) {
        inverse_times(inverses[sigma], all[pi], scratch);
        if (lengths[sigma] + (n - count_cycles(scratch)) != lengths[pi]) continue;
        out.push_back({Permutation(all[sigma]), Permutation(all[pi])});
      }
    }
  } else {
    if (k > kMaxTwoCyclePairs) {
      throw SizeLimitError("geodesic_pairs_two_cycle: k=" + std::to_string(k) + " exceeds cap " +
                           std::to_string(kMaxTwoCyclePairs));
    }
    const auto& lattice = enumerate_nc(k);
    // Pairs nu <= rho inside a single NC(k).
    std::vector<std::pair<const NonCrossingPartition*, const NonCrossingPartition*>> chains;
    for (const auto& rho : lattice) {
      for (const auto& nu : lattice) {
        if (leq(nu, rho)) chains.emplace_back(&nu, &rho);
      }
    }
    auto lift = [k](const NonCrossingPartition& left, const NonCrossingPartition& right) {
      std::vector<std::vector<int>> cycles = left.blocks();
      for (auto b : right.blocks()) {
        for (int& x : b) x += k;
        cycles.push_back(std::move(b));
      }
      return Permutation::from_cycles(2 * k, cycles);
    };
    for (const auto& [nu1, rho1] : chains) {
      for (const auto& [nu2, rho2] : chains) {
        out.push_back({lift(*nu1, *nu2), lift(*rho1, *rho2)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const GeodesicPair& a, const GeodesicPair& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return a.pi < b.pi;
  });
  return out;
}

}  // namespace mklab
