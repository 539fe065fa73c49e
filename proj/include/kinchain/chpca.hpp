#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kinchain/analytic.hpp"
#include "kinchain/kinematics.hpp"

namespace kinchain {

/// Complex correlation C_ij = (1/T) sum_t z_i(t) conj(z_j(t)).
///
/// This is the transpose of (1/T) Z^H Z: same spectrum, conjugated
/// eigenvectors. The orientation makes arg(u_i) grow with phase lead, so a
/// positive Hodge difference phi_i - phi_j means variable i leads j.
template <typename Derived>
ComplexMatrixX<typename Derived::RealScalar> complex_correlation(const Eigen::MatrixBase<Derived>& z) {
  using Real = typename Derived::RealScalar;
  const Real inv_t = Real(1) / static_cast<Real>(z.rows());
  ComplexMatrixX<Real> c = (z.transpose() * z.conjugate()) * inv_t;
  ComplexMatrixX<Real> herm = (c + c.adjoint()) * Real(0.5);
  return herm;
}

/// Rotates `u` so its largest-modulus entry (first on ties) is real positive.
template <typename Derived>
void canonicalize_phase(Eigen::MatrixBase<Derived>& u) {
  Index k = 0;
  u.cwiseAbs().maxCoeff(&k);
  const auto pivot = u(k);
  const auto mag = std::abs(pivot);
  if (mag == 0) return;
  u *= std::conj(pivot) / mag;
  u(k) = mag;
}

enum class EigenPath {
  native,          // complex self-adjoint solver
  real_embedding,  // 2N x 2N real symmetric [[Re, -Im], [Im, Re]]
};

/// Eigenpairs sorted by eigenvalue, descending. Columns of `vectors` are unit
/// norm and phase-canonicalized.
template <typename Real>
struct HermitianEigen {
  VectorX<Real> values;
  ComplexMatrixX<Real> vectors;
};

template <typename Real>
void check_hermitian(const ComplexMatrixX<Real>& c, Real tol = Real(1e-9)) {
  if (c.rows() != c.cols()) throw ShapeError("matrix is not square");
  const Real scale = std::max(Real(1), c.cwiseAbs().maxCoeff());
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol * scale) throw DataError("matrix is not Hermitian within tolerance");
}

template <typename Real>
HermitianEigen<Real> hermitian_eigen(const ComplexMatrixX<Real>& c, EigenPath path = EigenPath::native) {
  check_hermitian(c);
  const Index n = c.rows();
  HermitianEigen<Real> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  if (path == EigenPath::native) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrixX<Real>> solver(c);
    if (solver.info() != Eigen::Success) throw DegenerateError("Hermitian eigensolver did not converge");
    for (Index k = 0; k < n; ++k) {
      out.values(k) = solver.eigenvalues()(n - 1 - k);
      out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
  } else {
    MatrixX<Real> m(2 * n, 2 * n);
    m << c.real(), -c.imag(), c.imag(), c.real();
    Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver(m);
    if (solver.info() != Eigen::Success) throw DegenerateError("real symmetric eigensolver did not converge");
    // Every complex eigenpair (lambda, u) appears twice, as [Re u; Im u] and
    // [-Im u; Re u]. Walk the real pairs downwards and keep a vector only if
    // it adds a new complex direction.
    Index found = 0;
    for (Index k = 2 * n - 1; k >= 0 && found < n; --k) {
      ComplexVectorX<Real> u(n);
      for (Index i = 0; i < n; ++i)
        u(i) = std::complex<Real>(solver.eigenvectors()(i, k), solver.eigenvectors()(n + i, k));
      for (Index j = 0; j < found; ++j) u -= out.vectors.col(j) * out.vectors.col(j).dot(u);
      const Real norm = u.norm();
      if (norm < Real(0.5)) continue;
      out.vectors.col(found) = u / norm;
      out.values(found) = solver.eigenvalues()(k);
      ++found;
    }
    if (found != n) throw DegenerateError("real-embedding eigenvectors could not be paired");
  }
  for (Index k = 0; k < n; ++k) {
    auto col = out.vectors.col(k);
    canonicalize_phase(col);
    if (out.values(k) < Real(0) && out.values(k) >= Real(-1e-9)) out.values(k) = Real(0);
  }
  return out;
}

/// Eigenvalues of complex_correlation(z), descending, without forming the
/// N x N matrix when T < N: the nonzero spectrum of Z^T conj(Z) / T equals
/// that of Z Z^H / T, and the remaining N - T eigenvalues are zero.
template <typename Derived>
VectorX<typename Derived::RealScalar> correlation_spectrum(const Eigen::MatrixBase<Derived>& z) {
  using Real = typename Derived::RealScalar;
  const Index t = z.rows();
  const Index n = z.cols();
  const Real inv_t = Real(1) / static_cast<Real>(t);
  ComplexMatrixX<Real> gram;
  if (t < n) {
    gram = ComplexMatrixX<Real>::Zero(t, t);
    gram.template selfadjointView<Eigen::Lower>().rankUpdate(z, inv_t);
  } else {
    gram = ComplexMatrixX<Real>::Zero(n, n);
    gram.template selfadjointView<Eigen::Lower>().rankUpdate(z.adjoint(), inv_t);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrixX<Real>> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DegenerateError("Hermitian eigensolver did not converge");
  VectorX<Real> values = VectorX<Real>::Zero(n);
  const Index m = gram.rows();
  for (Index k = 0; k < m; ++k) values(k) = std::max(Real(0), solver.eigenvalues()(m - 1 - k));
  return values;
}

struct ComplexMode {
  int index = 1;  // 1-based
  double eigenvalue = 0.0;
  double contribution = 0.0;
  Eigen::VectorXcd vector;
  Eigen::VectorXd hodge;      // arg(vector), in (-pi, pi]
  Eigen::VectorXd amplitude;  // |vector|

  Index size() const noexcept { return vector.size(); }
};

ComplexMode make_mode(int index, double eigenvalue, double contribution, const Eigen::VectorXcd& vector);

/// All modes of a Hermitian matrix, eigenvalue-descending, contribution = lambda_k / sum(lambda).
std::vector<ComplexMode> eig_hermitian(const Eigen::MatrixXcd& c, EigenPath path = EigenPath::native);

struct RrsReport {
  int n_shuffles = 1000;
  double percentile = 99.0;
  std::uint64_t seed = 0;
  Eigen::VectorXd observed;
  Eigen::VectorXd null_mean;
  Eigen::VectorXd null_sd;
  Eigen::VectorXd thresholds;  // per mode, nonincreasing
  std::vector<int> significant_modes;  // 1-based
};

/// Rotational random shuffling: each column of z is circularly shifted by an
/// independent uniform offset in [0, T), and the spectrum recomputed. The
/// per-mode threshold is the k-th largest null value with
/// k = ceil((1 - percentile/100) * n_shuffles); a mode is significant when its
/// observed eigenvalue exceeds it. Shuffle s uses counter stream s of `seed`.
RrsReport rrs_test(const Eigen::MatrixXcd& z, int n_shuffles = 1000, double percentile = 99.0, std::uint64_t seed = 0,
                   int threads = 1);

/// z with column c rotated so that out(t, c) = z((t + shifts[c]) mod T, c).
Eigen::MatrixXcd circular_shift_columns(const Eigen::MatrixXcd& z, std::span<const Index> shifts);

struct RrsOptions {
  int n_shuffles = 1000;
  double percentile = 99.0;
  std::uint64_t seed = 0;
};

struct ChpcaOptions {
  TransformPlacement placement = TransformPlacement::joined;
  std::optional<RrsOptions> rrs;
  int threads = 1;
};

struct ChpcaResult {
  Labels labels;
  FrameSelection frames;
  Index samples = 0;
  TransformPlacement placement = TransformPlacement::joined;
  std::vector<ComplexMode> modes;
  std::optional<RrsReport> rrs;

  const ComplexMode& mode1() const { return modes.front(); }
};

ChpcaResult run_chpca(const AnalyticMatrix& z, const ChpcaOptions& options = {});

/// Full pipeline on speed series: analytic matrix over `frames` (a multi-range
/// selection is concatenated, i.e. the concatenated approach) for `points`
/// (empty = all), then modes and optional RRS.
ChpcaResult run_chpca(const SpeedSeries& speed, const FrameSelection& frames, std::span<const Index> points = {},
                      const ChpcaOptions& options = {});

/// Rotates the mode so the reference variable has zero phase.
ComplexMode align_to_reference(const ComplexMode& mode, Index reference);

struct TrialEnsemble {
  std::vector<ComplexMode> modes;  // aligned Mode 1 per trial
  bool aligned = true;
  Eigen::VectorXd mean_hodge;
  Eigen::VectorXd resultant_length;
  double consistency = 0.0;        // mean pairwise Spearman of hodge vectors
  double mean_contribution = 0.0;  // mean Mode-1 contribution across trials
};

TrialEnsemble ensemble_average(std::span<const ComplexMode> per_trial_modes, Index reference);

}  // namespace kinchain
