#include "mklab/nc_partition.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <mutex>
#include <sstream>
#include <utility>

#include "mklab/errors.hpp"

namespace mklab {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw std::invalid_argument("invalid non-crossing partition: " + what);
}

}  // namespace

NonCrossingPartition::NonCrossingPartition(int k, std::vector<Block> blocks)
    : k_(k), blocks_(std::move(blocks)) {
  canonicalise_and_validate();
}

void NonCrossingPartition::canonicalise_and_validate() {
  if (k_ < 1) invalid("ground set size must be positive");
  for (auto& b : blocks_) {
    if (b.empty()) invalid("empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });

  block_of_.assign(static_cast<std::size_t>(k_), -1);
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (std::size_t j = 0; j < blocks_[bi].size(); ++j) {
      const int x = blocks_[bi][j];
      if (x < 1 || x > k_) invalid("label " + std::to_string(x) + " outside [1," + std::to_string(k_) + "]");
      if (j > 0 && blocks_[bi][j - 1] == x) invalid("repeated label " + std::to_string(x));
      auto& slot = block_of_[static_cast<std::size_t>(x - 1)];
      if (slot != -1) invalid("label " + std::to_string(x) + " in two blocks");
      slot = static_cast<int>(bi);
    }
  }
  for (int i = 1; i <= k_; ++i) {
    if (block_of_[static_cast<std::size_t>(i - 1)] == -1) invalid("label " + std::to_string(i) + " missing");
  }

  // Scan left to right keeping a stack of blocks that have started but not
  // finished. A revisited block must be on top, otherwise a block opened in
  // between is still pending and the two cross.
  std::vector<int> open;
  std::vector<std::size_t> seen(blocks_.size(), 0);
  for (int i = 1; i <= k_; ++i) {
    const int b = block_of(i);
    const auto bs = static_cast<std::size_t>(b);
    if (seen[bs] > 0) {
      if (open.empty() || open.back() != b) invalid("blocks cross at " + std::to_string(i));
    } else if (blocks_[bs].size() > 1) {
      open.push_back(b);
    }
    ++seen[bs];
    if (seen[bs] == blocks_[bs].size() && blocks_[bs].size() > 1) open.pop_back();
  }
}

NonCrossingPartition NonCrossingPartition::finest(int k) {
  std::vector<Block> blocks;
  for (int i = 1; i <= k; ++i) blocks.push_back({i});
  return {k, std::move(blocks)};
}

NonCrossingPartition NonCrossingPartition::coarsest(int k) {
  Block all(static_cast<std::size_t>(std::max(k, 0)));
  for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return {k, {std::move(all)}};
}

NonCrossingPartition NonCrossingPartition::parse(std::string_view text, int k) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("partition must be written as {a,b|c|...}");
  }
  text = text.substr(1, text.size() - 2);

  std::vector<Block> blocks;
  int largest = 0;
  while (true) {
    const auto bar = text.find('|');
    std::string_view part = trim(text.substr(0, bar));
    Block block;
    while (!part.empty()) {
      const auto comma = part.find(',');
      const auto item = trim(part.substr(0, comma));
      int value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw std::invalid_argument("bad label '" + std::string(item) + "' in partition");
      }
      block.push_back(value);
      largest = std::max(largest, value);
      if (comma == std::string_view::npos) break;
      part = trim(part.substr(comma + 1));
    }
    if (block.empty()) throw std::invalid_argument("empty block in partition text");
    blocks.push_back(std::move(block));
    if (bar == std::string_view::npos) break;
    text = text.substr(bar + 1);
  }
  return {k > 0 ? k : largest, std::move(blocks)};
}

std::vector<int> NonCrossingPartition::block_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
  return sizes;
}

std::string NonCrossingPartition::to_string() const {
  std::string out = "{";
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    if (bi > 0) out += '|';
    for (std::size_t j = 0; j < blocks_[bi].size(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(blocks_[bi][j]);
    }
  }
  out += '}';
  return out;
}

std::strong_ordering operator<=>(const NonCrossingPartition& a, const NonCrossingPartition& b) {
  if (auto c = a.blocks_ <=> b.blocks_; c != 0) return c;
  return a.k_ <=> b.k_;
}

std::ostream& operator<<(std::ostream& os, const NonCrossingPartition& p) {
  return os << p.to_string();
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Builds NC(k) by choosing the block through the smallest unfilled point;
// the gaps between its elements and the tail are filled independently.
class NcGenerator {
 public:
  explicit NcGenerator(int k) : k_(k) {}

  std::vector<NonCrossingPartition> run() {
    pending_.push_back({1, k_});
    fill();
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void fill() {
    if (pending_.empty()) {
      out_.emplace_back(k_, blocks_);
      return;
    }
    const auto interval = pending_.back();
    pending_.pop_back();
    if (interval.first > interval.second) {
      fill();
    } else {
      Block block{interval.first};
      extend(block, interval.first, interval.second);
    }
    pending_.push_back(interval);
  }

  void extend(Block& block, int last, int hi) {
    blocks_.push_back(block);
    pending_.push_back({last + 1, hi});
    fill();
    pending_.pop_back();
    blocks_.pop_back();

    for (int j = last + 1; j <= hi; ++j) {
      block.push_back(j);
      pending_.push_back({last + 1, j - 1});
      extend(block, j, hi);
      pending_.pop_back();
      block.pop_back();
    }
  }

  int k_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<Block> blocks_;
  std::vector<NonCrossingPartition> out_;
};

}  // namespace

const std::vector<NonCrossingPartition>& enumerate_nc(int k) {
  if (k < 1 || k > kMaxEnumerationSize) {
    throw SizeLimitError("enumerate_nc: k=" + std::to_string(k) + " outside [1," +
                         std::to_string(kMaxEnumerationSize) + "]");
  }
  static std::array<std::once_flag, kMaxEnumerationSize + 1> once;
  static std::array<std::vector<NonCrossingPartition>, kMaxEnumerationSize + 1> cache;
  const auto slot = static_cast<std::size_t>(k);
  std::call_once(once[slot], [&] { cache[slot] = NcGenerator(k).run(); });
  return cache[slot];
}

// ---------------------------------------------------------------------------
// Order and complementation

bool leq(const NonCrossingPartition& finer, const NonCrossingPartition& coarser) {
  if (finer.ground_size() != coarser.ground_size()) {
    throw std::invalid_argument("leq: partitions of different ground sets");
  }
  for (const auto& b : finer.blocks()) {
    const int target = coarser.block_of(b.front());
    for (int x : b) {
      if (coarser.block_of(x) != target) return false;
    }
  }
  return true;
}

namespace {

// Tracks whether a growing run of consecutive points is a union of blocks.
class ClosureTracker {
 public:
  explicit ClosureTracker(const NonCrossingPartition& rho)
      : rho_(rho), count_(rho.block_count(), 0) {}

  void reset() {
    std::fill(count_.begin(), count_.end(), 0);
    partial_ = 0;
  }

  void add(int point) {
    const auto b = static_cast<std::size_t>(rho_.block_of(point));
    const auto size = rho_.blocks()[b].size();
    if (count_[b] == 0 && size > 1) ++partial_;
    ++count_[b];
    if (count_[b] == size && size > 1) --partial_;
  }

  bool closed() const { return partial_ == 0; }

 private:
  const NonCrossingPartition& rho_;
  std::vector<std::size_t> count_;
  int partial_ = 0;
};

}  // namespace

NonCrossingPartition kreweras(const NonCrossingPartition& rho) {
  // Barred points i and j (i < j) join iff {i+1, ..., j} is a union of
  // blocks of rho.
  const int k = rho.ground_size();
  std::vector<int> label(static_cast<std::size_t>(k), -1);
  std::vector<Block> blocks;
  ClosureTracker tracker(rho);
  for (int i = 1; i <= k; ++i) {
    if (label[static_cast<std::size_t>(i - 1)] != -1) continue;
    const int id = static_cast<int>(blocks.size());
    blocks.push_back({i});
    label[static_cast<std::size_t>(i - 1)] = id;
    tracker.reset();
    for (int j = i + 1; j <= k; ++j) {
      tracker.add(j);
      if (tracker.closed()) {
        label[static_cast<std::size_t>(j - 1)] = id;
        blocks.back().push_back(j);
      }
    }
  }
  return {k, std::move(blocks)};
}

std::vector<int> kreweras_points(const NonCrossingPartition& rho) {
  std::vector<int> points;
  const auto complement = kreweras(rho);
  for (const auto& b : complement.blocks()) points.push_back(b.back());
  std::sort(points.begin(), points.end());
  return points;
}

NonCrossingPartition insert_at(const NonCrossingPartition& outer, int p,
                               const NonCrossingPartition& inner) {
  const auto points = kreweras_points(outer);
  if (!std::binary_search(points.begin(), points.end(), p)) {
    throw InsertionError("insert_at: " + std::to_string(p) + " is not a Kreweras point of " +
                         outer.to_string());
  }
  const int m = inner.ground_size();
  std::vector<Block> blocks;
  blocks.reserve(outer.block_count() + inner.block_count());
  for (auto b : outer.blocks()) {
    for (int& x : b) {
      if (x > p) x += m;
    }
    blocks.push_back(std::move(b));
  }
  for (auto b : inner.blocks()) {
    for (int& x : b) x += p;
    blocks.push_back(std::move(b));
  }
  return {outer.ground_size() + m, std::move(blocks)};
}

NonCrossingPartition restrict_to_interval(const NonCrossingPartition& rho, int first, int last) {
  if (first < 1 || last > rho.ground_size() || first > last) {
    throw std::invalid_argument("restrict_to_interval: bad interval");
  }
  std::vector<Block> blocks;
  for (const auto& b : rho.blocks()) {
    const bool inside = b.front() >= first && b.back() <= last;
    const bool outside = b.back() < first || b.front() > last;
    if (!inside && !outside) {
      bool any_in = false;
      for (int x : b) any_in = any_in || (x >= first && x <= last);
      if (any_in) throw std::invalid_argument("restrict_to_interval: interval splits a block");
      continue;
    }
    if (inside) {
      Block shifted = b;
      for (int& x : shifted) x -= first - 1;
      blocks.push_back(std::move(shifted));
    }
  }
  return {last - first + 1, std::move(blocks)};
}

std::vector<KrewerasDecomposition> kreweras_decompositions(const NonCrossingPartition& rho) {
  const int k = rho.ground_size();
  std::vector<KrewerasDecomposition> out;
  ClosureTracker tracker(rho);
  for (int first = 1; first <= k; ++first) {
    tracker.reset();
    for (int last = first; last <= k; ++last) {
      tracker.add(last);
      if (!tracker.closed()) continue;
      if (first == 1 && last == k) continue;
      // The inner part sits right after outer point first-1; position 0 is
      // not a barred point.
      const int p = first - 1;
      if (p < 1) continue;

      const int m = last - first + 1;
      std::vector<Block> outer_blocks;
      std::vector<Block> inner_blocks;
      for (const auto& b : rho.blocks()) {
        if (b.front() >= first && b.back() <= last) {
          Block shifted = b;
          for (int& x : shifted) x -= p;
          inner_blocks.push_back(std::move(shifted));
        } else {
          Block shifted = b;
          for (int& x : shifted) {
            if (x > last) x -= m;
          }
          outer_blocks.push_back(std::move(shifted));
        }
      }
      NonCrossingPartition outer(k - m, std::move(outer_blocks));
      const auto points = kreweras_points(outer);
      if (!std::binary_search(points.begin(), points.end(), p)) continue;
      out.push_back({std::move(outer), NonCrossingPartition(m, std::move(inner_blocks)), p, first, last});
    }
  }
  return out;
}

}  // namespace mklab
