#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "mklab/dense_matrix.hpp"
#include "mklab/errors.hpp"
#include "mklab/permutation.hpp"
#include "mklab/rational.hpp"

namespace mklab {

/// Leading coefficient of the unitary Weingarten function: the product over
/// cycles of (-1)^(c-1) C_(c-1), c the cycle size.
Integer mu_asymptotic(const CycleType& type);

inline constexpr int kMaxWeingartenDegree = 8;
inline constexpr int kMaxHaarMomentDegree = 6;

/// Exact values Wg(sigma, N) for every cycle type of degree k.
class WeingartenTable {
 public:
  WeingartenTable(int k, long n, std::map<CycleType, Rational> values)
      : k_(k), n_(n), values_(std::move(values)) {}

  int degree() const noexcept { return k_; }
  long dimension() const noexcept { return n_; }
  const std::map<CycleType, Rational>& entries() const noexcept { return values_; }

  const Rational& value(const CycleType& type) const { return values_.at(type); }
  const Rational& value(const Permutation& sigma) const { return value(sigma.cycle_type()); }

  /// {k, N, entries: [{cycle_type, numerator, denominator}]}; numerator and
  /// denominator are decimal strings.
  nlohmann::json to_json() const;

 private:
  int k_;
  long n_;
  std::map<CycleType, Rational> values_;
};

/// Solves the class-reduced system
///   sum_{pi in S_k} N^{#(sigma^-1 pi)} Wg(type(pi), N) = [sigma = e]
/// with one representative sigma per cycle type, in exact arithmetic.
/// Throws ConditioningError if N < k and SizeLimitError if k > 8.
WeingartenTable build_table(int k, long n);

/// Product over the cycles (i1 i2 ... ip) of sigma of Tr(A_i1 A_i2 ... A_ip),
/// each cycle read from its smallest point.
template <class T>
T trace_product(const Permutation& sigma, std::span<const DenseMatrix<T>> matrices) {
  if (static_cast<int>(matrices.size()) != sigma.size()) {
    throw std::invalid_argument("trace_product: need one matrix per point");
  }
  const std::size_t n = matrices.front().dim();
  for (const auto& m : matrices) {
    if (m.dim() != n) throw std::invalid_argument("trace_product: dimension mismatch");
  }
  T result(1);
  for (const auto& cycle : sigma.cycles()) {
    DenseMatrix<T> product = matrices[static_cast<std::size_t>(cycle.front() - 1)];
    for (std::size_t j = 1; j < cycle.size(); ++j) {
      product = product * matrices[static_cast<std::size_t>(cycle[j] - 1)];
    }
    result *= product.trace();
  }
  return result;
}

/// E Tr[(A_1 U B_1 U*) ... (A_k U B_k U*)] for Haar U in U(N), via
///   sum_{sigma, pi} Tr_sigma[A] Tr_pi[B] Wg(pi^-1 sigma^-1 gamma_k, N).
template <class T>
T haar_mixed_moment(std::span<const DenseMatrix<T>> a, std::span<const DenseMatrix<T>> b, long n) {
  const int k = static_cast<int>(a.size());
  if (k < 1 || b.size() != a.size()) throw std::invalid_argument("haar_mixed_moment: need k matrices on each side");
  if (k > kMaxHaarMomentDegree) {
    throw SizeLimitError("haar_mixed_moment: k=" + std::to_string(k) + " exceeds cap " +
                         std::to_string(kMaxHaarMomentDegree));
  }
  for (const auto& m : a) {
    if (static_cast<long>(m.dim()) != n) throw std::invalid_argument("haar_mixed_moment: matrices must be N x N");
  }
  for (const auto& m : b) {
    if (static_cast<long>(m.dim()) != n) throw std::invalid_argument("haar_mixed_moment: matrices must be N x N");
  }
  const WeingartenTable table = build_table(k, n);
  const Permutation gamma = Permutation::full_cycle(k);

  std::vector<Permutation> group;
  for_each_permutation(k, [&](const Permutation& p) { group.push_back(p); });
  std::vector<T> trace_a;
  std::vector<T> trace_b;
  std::vector<Permutation> inverses;
  for (const auto& p : group) {
    trace_a.push_back(trace_product<T>(p, a));
    trace_b.push_back(trace_product<T>(p, b));
    inverses.push_back(p.inverse());
  }
  std::map<CycleType, T> weights;
  for (const auto& [type, value] : table.entries()) weights.emplace(type, scalar_cast<T>(value));

  T total(0);
  for (std::size_t s = 0; s < group.size(); ++s) {
    if (trace_a[s] == T(0)) continue;
    const Permutation rest = inverses[s] * gamma;
    for (std::size_t p = 0; p < group.size(); ++p) {
      if (trace_b[p] == T(0)) continue;
      total += trace_a[s] * trace_b[p] * weights.at((inverses[p] * rest).cycle_type());
    }
  }
  return total;
}

}  // namespace mklab
