#include "mklab/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mklab/errors.hpp"

namespace mklab {

namespace {

using Complex = std::complex<double>;

void require_hermitian(const ComplexMatrix& x) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    throw std::invalid_argument("eigen_hermitian: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  const double defect = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermiticityTolerance * scale) {
    throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
}

// Reduces the Hermitian matrix a (overwritten) to tridiagonal form
// Q^* a Q = T, returning the real diagonal and the complex subdiagonal
// (sub[i] = T(i+1, i)). Q is accumulated when q is non-null.
void householder_tridiagonalize(ComplexMatrix& a, std::vector<double>& diag,
                                std::vector<Complex>& sub, ComplexMatrix* q) {
  const Eigen::Index n = a.rows();
  if (q) q->setIdentity(n, n);
  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    const Eigen::Index m = n - j - 1;
    Eigen::VectorXcd v = a.col(j).tail(m);
    const double norm_x = v.norm();
    if (norm_x == 0.0) continue;
    const Complex x0 = v(0);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * norm_x;
    v(0) -= alpha;
    const double norm_v = v.norm();
    if (norm_v == 0.0) continue;
    v /= norm_v;

    // H = I - 2 v v^*; trailing block becomes A - 2 v w^* - 2 w v^*, with
    // p = A v, w = p - (v^* p) v. Only the lower triangle is kept current.
    auto block = a.bottomRightCorner(m, m);
    const Eigen::VectorXcd p = block.selfadjointView<Eigen::Lower>() * v;
    const Complex kappa = v.dot(p);  // v^* p, real for Hermitian A
    const Eigen::VectorXcd w = p - kappa.real() * v;
    block.selfadjointView<Eigen::Lower>().rankUpdate(v, w, Complex(-2.0));

    a.col(j).tail(m).setZero();
    a(j + 1, j) = alpha;

    if (q) {
      auto cols = q->rightCols(m);
      const Eigen::VectorXcd qv = cols * v;
      cols.noalias() -= 2.0 * qv * v.adjoint();
    }
  }
  diag.resize(static_cast<std::size_t>(n));
  sub.assign(static_cast<std::size_t>(n), Complex(0.0));
  for (Eigen::Index i = 0; i < n; ++i) {
    diag[static_cast<std::size_t>(i)] = a(i, i).real();
    if (i + 1 < n) sub[static_cast<std::size_t>(i)] = a(i + 1, i);
  }
}

// Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal
// matrix. e[i] couples d[i] and d[i+1]; e[n-1] is scratch. Rotations are
// applied to the columns of z when non-null.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd* z) {
  const int n = static_cast<int>(d.size());
  const int max_iterations = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  auto sz = [](int i) { return static_cast<std::size_t>(i); };

  // Absolute floor eps * ||T||: a zero eigenvalue cluster has dd = 0 and
  // would never satisfy the relative test alone.
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[sz(i)]) + std::abs(e[sz(i)]));
  const double floor = eps * scale;

  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[sz(m)]) + std::abs(d[sz(m + 1)]);
        if (std::abs(e[sz(m)]) <= eps * dd || std::abs(e[sz(m)]) <= floor) break;
      }
      if (m == l) break;
      if (++iterations > max_iterations) {
        throw NumericalError("eigen_hermitian: QL iteration did not converge");
      }
      double g = (d[sz(l + 1)] - d[sz(l)]) / (2.0 * e[sz(l)]);
      double r = std::hypot(g, 1.0);
      g = d[sz(m)] - d[sz(l)] + e[sz(l)] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        double f = s * e[sz(i)];
        const double b = c * e[sz(i)];
        r = std::hypot(f, g);
        e[sz(i + 1)] = r;
        if (r == 0.0) {
          d[sz(i + 1)] -= p;
          e[sz(m)] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[sz(i + 1)] - p;
        r = (d[sz(i)] - g) * s + 2.0 * c * b;
        p = s * r;
        d[sz(i + 1)] = g + p;
        g = c * r - b;
        if (z) {
          for (Eigen::Index row = 0; row < z->rows(); ++row) {
            f = (*z)(row, i + 1);
            (*z)(row, i + 1) = s * (*z)(row, i) + c * f;
            (*z)(row, i) = c * (*z)(row, i) - s * f;
          }
        }
      }
      if (underflow) continue;
      d[sz(l)] -= p;
      e[sz(l)] = g;
      e[sz(m)] = 0.0;
    } while (m != l);
  }
}

}  // namespace

HermitianEigenSolver::HermitianEigenSolver(const ComplexMatrix& x, bool compute_vectors) {
  require_hermitian(x);
  const Eigen::Index n = x.rows();
  ComplexMatrix work = x;
  std::vector<double> diag;
  std::vector<Complex> sub;
  ComplexMatrix q;
  householder_tridiagonalize(work, diag, sub, compute_vectors ? &q : nullptr);

  // Diagonal unitary similarity D^* T D making the subdiagonal real and
  // nonnegative: phi_{i+1} = phi_i * sub_i / |sub_i|.
  std::vector<double> off(static_cast<std::size_t>(n), 0.0);
  std::vector<Complex> phase(static_cast<std::size_t>(n), Complex(1.0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    const double magnitude = std::abs(sub[si]);
    off[si] = magnitude;
    phase[si + 1] = magnitude == 0.0 ? phase[si] : phase[si] * (sub[si] / magnitude);
  }

  Eigen::MatrixXd z;
  if (compute_vectors) z = Eigen::MatrixXd::Identity(n, n);
  tridiagonal_ql(diag, off, compute_vectors ? &z : nullptr);

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  values_.resize(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) values_[j] = diag[order[j]];

  if (compute_vectors) {
    // X = Q D T' D^* Q^*, so eigenvectors are Q D z.
    for (Eigen::Index i = 0; i < n; ++i) q.col(i) *= phase[static_cast<std::size_t>(i)];
    const ComplexMatrix all = q * z.cast<Complex>();
    vectors_.resize(n, n);
    for (std::size_t j = 0; j < order.size(); ++j) {
      vectors_.col(static_cast<Eigen::Index>(j)) = all.col(static_cast<Eigen::Index>(order[j]));
    }
  }
}

std::vector<double> eigen_hermitian(const ComplexMatrix& x) {
  return HermitianEigenSolver(x).eigenvalues();
}

double relative_eigen_residual(const ComplexMatrix& x, const HermitianEigenSolver& solver) {
  const auto& v = solver.eigenvectors();
  if (v.cols() == 0) throw std::logic_error("relative_eigen_residual: eigenvectors were not computed");
  const double scale = std::max(x.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const Eigen::VectorXcd r = x * v.col(j) - solver.eigenvalues()[static_cast<std::size_t>(j)] * v.col(j);
    worst = std::max(worst, r.norm() / scale);
  }
  return worst;
}

}  // namespace mklab
