#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kinchain/io.hpp"
#include "kinchain/kinematics.hpp"
#include "kinchain/segmentation.hpp"

namespace kinchain {

/// Phase-lagged oscillators with known ground truth.
///
/// s_i(t) = offset + sqrt(1 - m) a_i cos(w1 t - lag_i)
///                 + sqrt(m)     a_i cos(w2 t - lag_i - 2 pi i / N) + noise,
/// with w1 = 2 pi f / T, w2 = 2 pi (2 f + 1) / T, m = mode2_fraction. Both
/// frequencies sit on exact FFT bins and the second spatial pattern is
/// orthogonal to the first for equal amplitudes, so the standardized
/// correlation has eigenvalues (1 - m) N and m N.
struct OscillatorSpec {
  Index n_points = 3;
  double base_frequency = 8.0;      // cycles per series
  std::vector<double> phase_lags;   // radians; empty = all zero
  std::vector<double> amplitudes;   // empty = all one
  double noise_sd = 0.0;
  double mode2_fraction = 0.0;
  std::uint64_t seed = 0;
};

SpeedSeries gen_phase_lagged_speeds(const OscillatorSpec& spec, Index samples);

struct StrikeShape {
  Index backswing = 32;
  Index downswing = 16;
  double base = 1.0;
  double height = 0.6;
  Index lead_in = 24;
  Index tail = 24;
};

/// Synthetic wrist height with planted boundaries.
struct StrikeSequence {
  Eigen::VectorXd z;
  std::vector<Index> starts;
  std::vector<Index> tops;
  std::vector<Index> impacts;
  std::optional<RestInterval> rest;
};

/// Asymmetric triangle pulses (slow rise, fast fall). With `rest_after` = k > 0
/// a flat rest of `rest_len` frames follows strike k. `jitter` perturbs the
/// phase durations by up to that many frames and heights by up to 10 %.
StrikeSequence gen_strike_sequence(int n_strikes, int rest_after, Index rest_len, double jitter, std::uint64_t seed,
                                   const StrikeShape& shape = {});

/// A skeleton motion whose striking wrist traces `strikes.z`; other joints
/// follow delayed, scaled copies plus small horizontal motion.
MotionSequence strike_motion(const StrikeSequence& strikes, const Skeleton& skeleton, std::uint64_t seed,
                             double frame_rate = 30.0);

/// Integrates speeds along a fixed unit direction per point so that the
/// speed norm of the result reproduces `speed` (T + 1 frames).
MotionSequence motion_from_speeds(const SpeedSeries& speed);

}  // namespace kinchain
