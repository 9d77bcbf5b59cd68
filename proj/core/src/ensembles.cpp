#include "mklab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace mklab {

namespace {

using Complex = std::complex<double>;

ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, double variance, Rng& rng) {
  // Real and imaginary parts each carry half the variance.
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

std::string to_string(EnsembleFamily family) {
  switch (family) {
    case EnsembleFamily::gue:
      return "gue";
    case EnsembleFamily::fixed_spectrum:
      return "fixed";
    case EnsembleFamily::wishart:
      return "wishart";
  }
  return "gue";
}

EnsembleFamily parse_ensemble_family(const std::string& text) {
  if (text == "gue") return EnsembleFamily::gue;
  if (text == "fixed") return EnsembleFamily::fixed_spectrum;
  if (text == "wishart") return EnsembleFamily::wishart;
  throw std::invalid_argument("unknown ensemble '" + text + "' (expected gue, fixed or wishart)");
}

void EnsembleSpec::validate() const {
  if (n < 2) throw std::invalid_argument("ensemble: N must be at least 2");
  if (family == EnsembleFamily::fixed_spectrum && spectrum.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("ensemble: fixed spectrum needs exactly N values");
  }
  if (family == EnsembleFamily::wishart) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw std::invalid_argument("ensemble: Wishart ratio must be positive");
    if (wishart_columns() < 1) throw std::invalid_argument("ensemble: Wishart needs M >= 1");
  }
}

int EnsembleSpec::wishart_columns() const { return static_cast<int>(std::lround(ratio * n)); }

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = (seed ^ trial) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix sample_haar_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary: N must be positive");
  const ComplexMatrix z = complex_gaussian(n, n, 1.0, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag == 0.0 ? Complex(1.0) : d / mag;
  }
  return q;
}

ComplexMatrix sample_matrix(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  const Eigen::Index n = spec.n;
  switch (spec.family) {
    case EnsembleFamily::gue: {
      const double variance = 1.0 / static_cast<double>(n);
      std::normal_distribution<double> diagonal(0.0, std::sqrt(variance));
      std::normal_distribution<double> half(0.0, std::sqrt(variance / 2.0));
      ComplexMatrix x(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        x(j, j) = Complex(diagonal(rng), 0.0);
        for (Eigen::Index i = 0; i < j; ++i) {
          const double re = half(rng);
          const double im = half(rng);
          x(i, j) = Complex(re, im);
          x(j, i) = std::conj(x(i, j));
        }
      }
      return x;
    }
    case EnsembleFamily::fixed_spectrum: {
      const auto [lo, hi] = std::minmax_element(spec.spectrum.begin(), spec.spectrum.end());
      if (*lo == *hi) {
        // U (a I) U^* = a I.
        return ComplexMatrix::Identity(n, n) * (*lo);
      }
      const ComplexMatrix u = sample_haar_unitary(spec.n, rng);
      Eigen::VectorXcd d(n);
      for (Eigen::Index i = 0; i < n; ++i) d(i) = spec.spectrum[static_cast<std::size_t>(i)];
      ComplexMatrix x = u * d.asDiagonal() * u.adjoint();
      // Symmetrise away rounding so the result is exactly Hermitian.
      x = (0.5 * (x + x.adjoint())).eval();
      return x;
    }
    case EnsembleFamily::wishart: {
      const ComplexMatrix g = complex_gaussian(n, spec.wishart_columns(), 1.0, rng);
      ComplexMatrix x = (g * g.adjoint()) / static_cast<double>(n);
      x = (0.5 * (x + x.adjoint())).eval();
      return x;
    }
  }
  throw std::logic_error("sample_matrix: unhandled family");
}

ComplexMatrix principal_submatrix(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("principal_submatrix: matrix must be square");
  if (x.rows() < 2) throw std::invalid_argument("principal_submatrix: N must be at least 2");
  return x.topLeftCorner(x.rows() - 1, x.cols() - 1);
}

double default_interlacing_tolerance(std::span<const double> lambda) {
  double largest = 0.0;
  for (double v : lambda) largest = std::max(largest, std::abs(v));
  return 1e-8 * (1.0 + largest);
}

bool check_interlacing(std::span<const double> lambda, std::span<const double> lambda_tilde,
                       std::optional<double> tol) {
  if (lambda.empty() || lambda_tilde.size() + 1 != lambda.size()) {
    throw std::invalid_argument("check_interlacing: need sizes N and N-1");
  }
  const double t = tol.value_or(default_interlacing_tolerance(lambda));
  for (std::size_t i = 0; i < lambda_tilde.size(); ++i) {
    if (lambda[i] > lambda_tilde[i] + t) return false;
    if (lambda_tilde[i] > lambda[i + 1] + t) return false;
  }
  return true;
}

SpectrumSample draw_spectrum_sample(const EnsembleSpec& spec, std::uint64_t trial) {
  SpectrumSample sample;
  sample.seed_used = trial_seed(spec.seed, trial);
  Rng rng(sample.seed_used);
  const ComplexMatrix x = sample_matrix(spec, rng);
  sample.deleted_diagonal = x(x.rows() - 1, x.cols() - 1).real();
  sample.lambda = eigen_hermitian(x);
  sample.lambda_tilde = eigen_hermitian(principal_submatrix(x));
  sample.interlacing_ok = check_interlacing(sample.lambda, sample.lambda_tilde);
  return sample;
}

}  // namespace mklab
