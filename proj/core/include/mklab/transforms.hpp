#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mklab/errors.hpp"
#include "mklab/nc_partition.hpp"
#include "mklab/permutation.hpp"
#include "mklab/rational.hpp"

namespace mklab {

/// What a moment sequence describes. Purely descriptive: no positivity or
/// Hankel condition is checked for any kind.
enum class SequenceKind { transition, rayleigh, raw };

std::string to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(const std::string& text);

template <class S>
struct ScalarMode;
template <>
struct ScalarMode<Rational> {
  static constexpr const char* name = "rational";
};
template <>
struct ScalarMode<double> {
  static constexpr const char* name = "float";
};

namespace detail {

template <class S>
class IndexedSequence {
 public:
  explicit IndexedSequence(std::vector<S> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("sequence order must be at least 1");
  }

  int order() const noexcept { return static_cast<int>(values_.size()); }
  /// 1-based.
  const S& operator[](int k) const {
    if (k < 1 || k > order()) {
      throw std::out_of_range("sequence index " + std::to_string(k) + " outside [1," +
                             std::to_string(order()) + "]");
    }
    return values_[static_cast<std::size_t>(k - 1)];
  }
  const std::vector<S>& values() const noexcept { return values_; }

  /// Product of entries indexed by the given block or cycle sizes.
  S over_sizes(std::span<const int> sizes) const {
    S product(1);
    for (int s : sizes) product *= (*this)[s];
    return product;
  }
  S over_blocks(const NonCrossingPartition& rho) const {
    const auto sizes = rho.block_sizes();
    return over_sizes(sizes);
  }
  S over_cycles(const Permutation& sigma) const { return over_sizes(sigma.cycle_type().parts()); }

  friend bool operator==(const IndexedSequence&, const IndexedSequence&) = default;

 private:
  std::vector<S> values_;
};

}  // namespace detail

/// Moments M_1..M_K of a measure, signed measure or formal sequence.
template <class S>
class MomentSequence : public detail::IndexedSequence<S> {
 public:
  MomentSequence(SequenceKind kind, std::vector<S> values)
      : detail::IndexedSequence<S>(std::move(values)), kind_(kind) {}

  SequenceKind kind() const noexcept { return kind_; }

  friend bool operator==(const MomentSequence&, const MomentSequence&) = default;

 private:
  SequenceKind kind_;
};

/// Free cumulants fc_1..fc_K.
template <class S>
class FreeCumulantSequence : public detail::IndexedSequence<S> {
 public:
  explicit FreeCumulantSequence(std::vector<S> values)
      : detail::IndexedSequence<S>(std::move(values)) {}

  friend bool operator==(const FreeCumulantSequence&, const FreeCumulantSequence&) = default;
};

/// Block-size multiset (descending) with an integer weight.
struct TypeWeight {
  std::vector<int> sizes;
  long weight;
};

/// NC(k) grouped by block sizes: weight = number of partitions of that shape.
const std::vector<TypeWeight>& nc_shape_counts(int k);

/// Coefficients of the moment-to-cumulant map at order k, grouped by the
/// block sizes of nu: weight = sum of mobius_nc(nu, 1_k) over nu of that shape.
const std::vector<TypeWeight>& cumulant_coefficients(int k);

/// fc_k = sum_{nu in NC(k)} M_nu mobius(nu, 1_k).
template <class S>
FreeCumulantSequence<S> moments_to_cumulants(const MomentSequence<S>& m) {
  std::vector<S> fc;
  for (int k = 1; k <= m.order(); ++k) {
    S sum(0);
    for (const auto& term : cumulant_coefficients(k)) sum += S(term.weight) * m.over_sizes(term.sizes);
    fc.push_back(sum);
  }
  return FreeCumulantSequence<S>(std::move(fc));
}

/// M_k = sum_{rho in NC(k)} fc_rho.
template <class S>
MomentSequence<S> cumulants_to_moments(const FreeCumulantSequence<S>& fc,
                                       SequenceKind kind = SequenceKind::transition) {
  std::vector<S> m;
  for (int k = 1; k <= fc.order(); ++k) {
    S sum(0);
    for (const auto& term : nc_shape_counts(k)) sum += S(term.weight) * fc.over_sizes(term.sizes);
    m.push_back(sum);
  }
  return MomentSequence<S>(kind, std::move(m));
}

/// Moments of the Rayleigh measure tau from moments of the transition
/// measure: M_k(tau) = k M_k(m) - sum_{r<k} M_r(tau) M_{k-r}(m).
template <class S>
MomentSequence<S> mk_forward(const MomentSequence<S>& m) {
  std::vector<S> tau;
  for (int k = 1; k <= m.order(); ++k) {
    S value = S(k) * m[k];
    for (int r = 1; r < k; ++r) value -= tau[static_cast<std::size_t>(r - 1)] * m[k - r];
    tau.push_back(value);
  }
  return MomentSequence<S>(SequenceKind::rayleigh, std::move(tau));
}

/// Inverse of mk_forward: M_k(m) = (M_k(tau) + sum_{r<k} M_r(tau) M_{k-r}(m)) / k.
template <class S>
MomentSequence<S> mk_inverse(const MomentSequence<S>& tau) {
  std::vector<S> m;
  for (int k = 1; k <= tau.order(); ++k) {
    S value = tau[k];
    for (int r = 1; r < k; ++r) value += tau[r] * m[static_cast<std::size_t>(k - r - 1)];
    m.push_back(value / S(k));
  }
  return MomentSequence<S>(SequenceKind::transition, std::move(m));
}

inline constexpr int kMaxClosedFormOrder = 10;
inline constexpr int kMaxPredictionOrder = 8;

/// sum_{rho in NC(k)} (k + 1 - |rho|) fc_rho, summed partition by partition.
template <class S>
S thm12_sum(const FreeCumulantSequence<S>& fc, int k) {
  if (k < 1 || k > fc.order()) throw std::out_of_range("thm12_sum: k outside sequence order");
  if (k > kMaxClosedFormOrder) throw SizeLimitError("thm12_sum: k exceeds " + std::to_string(kMaxClosedFormOrder));
  S total(0);
  for (const auto& rho : enumerate_nc(k)) {
    total += S(k + 1 - static_cast<int>(rho.block_count())) * fc.over_blocks(rho);
  }
  return total;
}

/// Limit prediction for E[M_k(kappa_N)^ell], ell in {1, 2}, with
/// deterministic cumulants:
///   ell = 1: sum_rho |K(rho)| fc_rho
///   ell = 2: sum_{rho1, rho2} |K(rho1)| |K(rho2)| fc_rho1 fc_rho2
template <class S>
S thm31_prediction(const FreeCumulantSequence<S>& fc, int k, int ell) {
  if (ell != 1 && ell != 2) throw std::invalid_argument("thm31_prediction: ell must be 1 or 2");
  if (k < 1 || k > fc.order()) throw std::out_of_range("thm31_prediction: k outside sequence order");
  if (k > kMaxPredictionOrder) {
    throw SizeLimitError("thm31_prediction: k exceeds " + std::to_string(kMaxPredictionOrder));
  }
  const auto& lattice = enumerate_nc(k);
  std::vector<S> weighted;
  weighted.reserve(lattice.size());
  for (const auto& rho : lattice) {
    weighted.push_back(S(static_cast<long>(kreweras(rho).block_count())) * fc.over_blocks(rho));
  }
  S total(0);
  if (ell == 1) {
    for (const auto& w : weighted) total += w;
  } else {
    for (const auto& w1 : weighted) {
      if (w1 == S(0)) continue;
      for (const auto& w2 : weighted) total += w1 * w2;
    }
  }
  return total;
}

/// Moments of kappa = sum delta_lambda_i - sum delta_lambda~_j, k = 1..K.
MomentSequence<double> rayleigh_moments(std::span<const double> lambda,
                                        std::span<const double> lambda_tilde, int order);

/// {kind, K, scalar_mode, values}; rationals as "p/q" strings.
template <class S>
nlohmann::json to_json(const detail::IndexedSequence<S>& seq, const std::string& kind) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : seq.values()) {
    if constexpr (std::is_same_v<S, Rational>) {
      values.push_back(to_fraction_string(v));
    } else {
      values.push_back(v);
    }
  }
  return {{"kind", kind}, {"K", seq.order()}, {"scalar_mode", ScalarMode<S>::name}, {"values", values}};
}

template <class S>
nlohmann::json to_json(const MomentSequence<S>& m) {
  return to_json(static_cast<const detail::IndexedSequence<S>&>(m), to_string(m.kind()));
}

template <class S>
nlohmann::json to_json(const FreeCumulantSequence<S>& fc) {
  return to_json(static_cast<const detail::IndexedSequence<S>&>(fc), "free_cumulant");
}

/// Reads the values array of a sequence document. Throws
/// std::invalid_argument on schema mismatch, including a scalar_mode
/// different from S.
template <class S>
std::vector<S> sequence_values_from_json(const nlohmann::json& doc) {
  if (!doc.contains("values") || !doc.at("values").is_array()) {
    throw std::invalid_argument("sequence JSON: missing values array");
  }
  const std::string mode = doc.value("scalar_mode", std::string(ScalarMode<S>::name));
  if (mode != ScalarMode<S>::name) {
    throw std::invalid_argument("sequence JSON: scalar_mode '" + mode + "' where '" +
                                ScalarMode<S>::name + "' expected");
  }
  std::vector<S> values;
  for (const auto& v : doc.at("values")) {
    if constexpr (std::is_same_v<S, Rational>) {
      values.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
    } else {
      values.push_back(v.get<double>());
    }
  }
  if (doc.contains("K") && doc.at("K").get<int>() != static_cast<int>(values.size())) {
    throw std::invalid_argument("sequence JSON: K does not match number of values");
  }
  return values;
}

template <class S>
MomentSequence<S> moment_sequence_from_json(const nlohmann::json& doc) {
  return MomentSequence<S>(parse_sequence_kind(doc.value("kind", std::string("raw"))),
                           sequence_values_from_json<S>(doc));
}

}  // namespace mklab
