#include "mklab/transforms.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>

namespace mklab {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::transition:
      return "transition";
    case SequenceKind::rayleigh:
      return "rayleigh";
    case SequenceKind::raw:
      return "raw";
  }
  return "raw";
}

SequenceKind parse_sequence_kind(const std::string& text) {
  if (text == "transition") return SequenceKind::transition;
  if (text == "rayleigh") return SequenceKind::rayleigh;
  if (text == "raw") return SequenceKind::raw;
  throw std::invalid_argument("unknown sequence kind '" + text + "'");
}

namespace {

std::vector<int> shape_of(const NonCrossingPartition& rho) {
  auto sizes = rho.block_sizes();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

std::vector<TypeWeight> flatten(const std::map<std::vector<int>, long>& grouped) {
  std::vector<TypeWeight> out;
  for (const auto& [sizes, weight] : grouped) {
    if (weight != 0) out.push_back({sizes, weight});
  }
  return out;
}

template <class Build>
const std::vector<TypeWeight>& cached(int k, Build build) {
  // Separate storage per call site: each lambda type instantiates its own.
  static std::array<std::once_flag, kMaxEnumerationSize + 1> once;
  static std::array<std::vector<TypeWeight>, kMaxEnumerationSize + 1> table;
  if (k < 1 || k > kMaxEnumerationSize) {
    throw SizeLimitError("sequence order " + std::to_string(k) + " exceeds enumeration cap " +
                         std::to_string(kMaxEnumerationSize));
  }
  const auto slot = static_cast<std::size_t>(k);
  std::call_once(once[slot], [&] { table[slot] = build(k); });
  return table[slot];
}

}  // namespace

const std::vector<TypeWeight>& nc_shape_counts(int k) {
  return cached(k, [](int order) {
    std::map<std::vector<int>, long> grouped;
    for (const auto& rho : enumerate_nc(order)) ++grouped[shape_of(rho)];
    return flatten(grouped);
  });
}

const std::vector<TypeWeight>& cumulant_coefficients(int k) {
  return cached(k, [](int order) {
    const auto top = NonCrossingPartition::coarsest(order);
    std::map<std::vector<int>, long> grouped;
    for (const auto& nu : enumerate_nc(order)) {
      grouped[shape_of(nu)] += mobius_nc(nu, top).get_num().get_si();
    }
    return flatten(grouped);
  });
}

MomentSequence<double> rayleigh_moments(std::span<const double> lambda,
                                        std::span<const double> lambda_tilde, int order) {
  if (lambda.empty() || lambda_tilde.size() + 1 != lambda.size()) {
    throw std::invalid_argument("rayleigh_moments: need N eigenvalues and N-1 submatrix eigenvalues");
  }
  if (order < 1) throw std::invalid_argument("rayleigh_moments: order must be positive");
  std::vector<double> moments(static_cast<std::size_t>(order), 0.0);
  auto accumulate = [&](std::span<const double> values, double sign) {
    for (double x : values) {
      double power = 1.0;
      for (int k = 1; k <= order; ++k) {
        power *= x;
        moments[static_cast<std::size_t>(k - 1)] += sign * power;
      }
    }
  };
  accumulate(lambda, 1.0);
  accumulate(lambda_tilde, -1.0);
  return MomentSequence<double>(SequenceKind::rayleigh, std::move(moments));
}

}  // namespace mklab
