#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mklab/hermitian_eigen.hpp"

namespace mklab {

enum class EnsembleFamily { gue, fixed_spectrum, wishart };

std::string to_string(EnsembleFamily family);
EnsembleFamily parse_ensemble_family(const std::string& text);

/// Unitarily invariant Hermitian ensemble.
///
///  - gue: independent complex Gaussians above the diagonal with
///    E|X_ij|^2 = 1/N, real diagonal of variance 1/N. Semicircle on [-2, 2].
///  - fixed_spectrum: U diag(spectrum) U^* with U Haar.
///  - wishart: G G^* / N with G an N x M standard complex Gaussian matrix and
///    M = round(ratio * N). Free Poisson limit with every free cumulant
///    equal to ratio.
struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::gue;
  int n = 2;
  std::vector<double> spectrum;
  double ratio = 1.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when the parameters are inconsistent.
  void validate() const;
  int wishart_columns() const;
};

using Rng = std::mt19937_64;

/// Seed of trial t: splitmix64(seed XOR t). Trials are independent streams
/// regardless of how they are scheduled.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Haar unitary: QR of a standard complex Gaussian matrix, with the phases
/// chosen so that R has a positive real diagonal.
ComplexMatrix sample_haar_unitary(int n, Rng& rng);

ComplexMatrix sample_matrix(const EnsembleSpec& spec, Rng& rng);

/// X with its last row and column removed.
ComplexMatrix principal_submatrix(const ComplexMatrix& x);

/// 1e-8 * (1 + max |lambda_i|).
double default_interlacing_tolerance(std::span<const double> lambda);

/// lambda_i <= lambda~_i + tol and lambda~_i <= lambda_{i+1} + tol for all i.
/// Inputs sorted ascending, sizes N and N-1.
bool check_interlacing(std::span<const double> lambda, std::span<const double> lambda_tilde,
                       std::optional<double> tol = std::nullopt);

struct SpectrumSample {
  std::vector<double> lambda;
  std::vector<double> lambda_tilde;
  bool interlacing_ok = false;
  std::uint64_t seed_used = 0;
  /// X_NN, the diagonal entry removed with the last row and column.
  double deleted_diagonal = 0.0;
};

/// One draw of trial `trial` for the given spec.
SpectrumSample draw_spectrum_sample(const EnsembleSpec& spec, std::uint64_t trial);

}  // namespace mklab
