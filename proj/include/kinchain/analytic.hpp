#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include <unsupported/Eigen/FFT>

#include "kinchain/core.hpp"
#include "kinchain/parallel.hpp"

namespace kinchain {

/// Analytic signal of the mean-removed input: forward FFT, positive
/// frequencies doubled, negative ones zeroed (DC and Nyquist kept), inverse FFT.
/// The real part reproduces the mean-removed input.
template <typename Derived>
ComplexVectorX<typename Derived::RealScalar> hilbert_analytic(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  static_assert(!Eigen::NumTraits<typename Derived::Scalar>::IsComplex, "hilbert_analytic expects a real series");
  const Index n = x.size();
  if (n < 2) throw DataError("analytic signal needs at least 2 samples");

  ComplexVectorX<Real> centred(n);
  const Real mean = x.mean();
  for (Index t = 0; t < n; ++t) centred(t) = std::complex<Real>(x(t) - mean, Real(0));

  Eigen::FFT<Real> fft;
  ComplexVectorX<Real> spectrum(n);
  fft.fwd(spectrum, centred);
  const Index half = n / 2;
  for (Index k = 1; k < n; ++k) {
    if (k < (n + 1) / 2) spectrum(k) *= Real(2);
    else if (!(n % 2 == 0 && k == half)) spectrum(k) = Real(0);
  }
  ComplexVectorX<Real> out(n);
  fft.inv(out, spectrum);
  // The real part is the input by construction; pin it to kill round-off.
  for (Index t = 0; t < n; ++t) out(t).real(centred(t).real());
  return out;
}

/// Subtracts the complex mean and scales to unit mean squared modulus.
/// Throws DegenerateError naming `name` when the series is constant.
template <typename Derived>
ComplexVectorX<typename Derived::RealScalar> standardize_complex(const Eigen::MatrixBase<Derived>& z,
                                                                 std::string_view name = "series") {
  using Real = typename Derived::RealScalar;
  ComplexVectorX<Real> out = z.array() - z.mean();
  const Real power = out.squaredNorm() / static_cast<Real>(out.size());
  if (!(power > Real(0)) || !std::isfinite(power))
    throw DegenerateError("variable '" + std::string(name) + "' has zero variance on the analysed frames");
  out /= std::sqrt(power);
  return out;
}

enum class TransformPlacement {
  joined,       // one transform over the concatenated selection
  per_segment,  // transform each range separately, then concatenate
};

/// Standardized analytic signals, T_seg x N.
struct AnalyticMatrix {
  Eigen::MatrixXcd values;
  Labels labels;
  FrameSelection frames;

  Index samples() const noexcept { return values.rows(); }
  Index variables() const noexcept { return values.cols(); }
};

/// Builds Z from real columns (frames x variables) for the given selection and
/// column subset. An empty `columns_subset` means all columns.
AnalyticMatrix build_analytic_matrix(const Eigen::MatrixXd& series, const Labels& labels, const FrameSelection& frames,
                                     std::span<const Index> columns_subset = {},
                                     TransformPlacement placement = TransformPlacement::joined, int threads = 1);

/// Analytic signal of a selection of one real column, honouring `placement`
/// (mean removal happens per transformed piece).
Eigen::VectorXcd analytic_over_selection(const Eigen::Ref<const Eigen::VectorXd>& column, const FrameSelection& frames,
                                         TransformPlacement placement);

}  // namespace kinchain
