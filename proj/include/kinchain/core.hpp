#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kinchain/errors.hpp"

namespace kinchain {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrixX = MatrixX<std::complex<Real>>;
template <typename Real>
using ComplexVectorX = VectorX<std::complex<Real>>;

using Labels = std::vector<std::string>;

/// Half-open range [begin, end) of sample indices.
struct FrameRange {
  Index begin = 0;
  Index end = 0;

  Index size() const noexcept { return end - begin; }
  bool operator==(const FrameRange&) const = default;
};

/// Ordered list of ranges; multi-range selections are concatenated along time.
using FrameSelection = std::vector<FrameRange>;

inline Index total_length(const FrameSelection& frames) {
  Index n = 0;
  for (const auto& r : frames) n += r.size();
  return n;
}

/// Throws DataError unless every range is nonempty and lies in [0, length).
inline void check_selection(const FrameSelection& frames, Index length) {
  if (frames.empty()) throw DataError("empty frame selection");
  for (const auto& r : frames) {
    if (r.begin < 0 || r.end > length || r.size() <= 0)
      throw DataError("frame range [" + std::to_string(r.begin) + ", " + std::to_string(r.end) +
                      ") outside series of length " + std::to_string(length));
  }
}

/// Rows of `m` picked by `frames`, concatenated in selection order.
template <typename Derived>
MatrixX<typename Derived::Scalar> gather_rows(const Eigen::MatrixBase<Derived>& m,
                                              const FrameSelection& frames) {
  check_selection(frames, m.rows());
  MatrixX<typename Derived::Scalar> out(total_length(frames), m.cols());
  Index row = 0;
  for (const auto& r : frames) {
    out.middleRows(row, r.size()) = m.middleRows(r.begin, r.size());
    row += r.size();
  }
  return out;
}

}  // namespace kinchain
