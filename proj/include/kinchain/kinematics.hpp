#pragma once

#include "kinchain/io.hpp"

namespace kinchain {

/// Frame-difference velocities in m/frame: values[t] = x(t+1) - x(t).
struct VelocitySeries {
  double frame_rate = 30.0;
  Labels labels;
  std::vector<Eigen::MatrixX3d> values;  // T-1 blocks of N x 3

  Index frames() const noexcept { return static_cast<Index>(values.size()); }
  Index points() const noexcept { return static_cast<Index>(labels.size()); }

  /// (T-1) x 3N matrix, columns ordered point-major: p0.x, p0.y, p0.z, p1.x, ...
  Eigen::MatrixXd components() const;
  /// Labels matching components(): "<label>.x" etc.
  Labels component_labels() const;
};

/// Per-point speed norms, (T-1) x N.
struct SpeedSeries {
  double frame_rate = 30.0;
  Labels labels;
  Eigen::MatrixXd values;

  Index frames() const noexcept { return values.rows(); }
  Index points() const noexcept { return values.cols(); }
};

VelocitySeries velocity(const MotionSequence& seq);
SpeedSeries speed_norm(const VelocitySeries& vel);

/// Population variance of s_i(t)^2 over the selected frames, one value per point.
Eigen::VectorXd energy_variance(const SpeedSeries& speed, const FrameSelection& frames);

}  // namespace kinchain
