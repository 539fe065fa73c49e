#pragma once

#include <span>
#include <vector>

#include "kinchain/core.hpp"

namespace kinchain {

struct SegmentationConfig {
  double height_floor_fraction = 0.40;   // tops below min + fraction * range are dropped
  double rest_gap_factor = 1.8;          // gaps above factor * median gap are rests
  double loose_prominence_floor = 0.05;  // candidate prominence floor, fraction of range
  // When min/max of the candidate prominences reaches this ratio the set has no
  // weak tail and every candidate is kept instead of splitting at the elbow.
  double uniform_prominence_ratio = 0.5;

  void validate() const;
};

struct PeakCandidate {
  Index frame = 0;
  double prominence = 0.0;
};

/// One strike: backswing start -> top -> impact, all position-frame indices.
struct Trial {
  Index start = 0;
  Index top = 0;
  Index impact = 0;

  /// Speed-series samples of the backswing, [start, top).
  FrameRange backswing() const noexcept { return {start, top}; }
  /// Speed-series samples of the downswing, [top, impact).
  FrameRange downswing() const noexcept { return {top, impact}; }
};

/// Inclusive frame interval between two tops separated by a long gap.
struct RestInterval {
  Index first = 0;
  Index last = 0;
};

struct SegmentationResult {
  std::vector<Index> tops;
  std::vector<Trial> trials;
  std::vector<RestInterval> rests;
  double prominence_threshold = 0.0;
  std::vector<PeakCandidate> candidates;

  FrameSelection backswings() const;
  FrameSelection downswings() const;
};

/// Local maxima whose topographic prominence is at least
/// cfg.loose_prominence_floor * (max - min). A flat-topped maximum is reported
/// once, at the middle of the plateau (left-biased).
std::vector<PeakCandidate> detect_candidate_tops(const Eigen::Ref<const Eigen::VectorXd>& z,
                                                 const SegmentationConfig& cfg = {});

/// Threshold separating strong from weak prominences. Input sorted descending.
/// Candidates with prominence >= threshold are accepted.
double prominence_elbow_split(std::span<const double> sorted_desc, double uniform_ratio = 0.5);

/// Splits a wrist-height series into backswing/downswing trials.
SegmentationResult segment_phases(const Eigen::Ref<const Eigen::VectorXd>& z, const SegmentationConfig& cfg = {});

}  // namespace kinchain
