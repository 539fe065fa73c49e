#pragma once

#include <iosfwd>
#include <span>

#include "kinchain/analytic.hpp"
#include "kinchain/chpca.hpp"
#include "kinchain/kinematics.hpp"

namespace kinchain {

/// Antisymmetric matrix of wrapped pairwise phase differences. A positive
/// entry (i, j) means variable i leads variable j.
struct PairPhaseMatrix {
  Labels labels;
  Eigen::MatrixXd values;

  Index size() const noexcept { return values.rows(); }
  /// Entries (i, j), i < j, row-major: (0,1), (0,2), ..., (1,2), ...
  Eigen::VectorXd upper_triangle() const;
};

/// Instantaneous phase (arg of the analytic signal). Throws DegenerateError for
/// a constant series.
Eigen::VectorXd instantaneous_phase(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Entry (i, j) = arg(sum_t exp(j (phase_i(t) - phase_j(t)))), phases given as
/// samples x variables.
PairPhaseMatrix circular_mean_differences(const Eigen::MatrixXd& phases, const Labels& labels);

/// Per-variable phases over a selection; each range is transformed on its own
/// and the phase series concatenated.
Eigen::MatrixXd selection_phases(const Eigen::MatrixXd& series, const Labels& labels, const FrameSelection& frames,
                                 std::span<const Index> columns = {});

/// Continuous relative phase of all point pairs over the selected frames.
PairPhaseMatrix crp_matrix(const SpeedSeries& speed, const FrameSelection& frames, std::span<const Index> points = {});

/// Wrapped Hodge differences phi_i - phi_j of one mode.
PairPhaseMatrix mode_phase_matrix(const ComplexMode& mode, const Labels& labels);

/// CSV with header i_label,j_label,crp_diff,mode1_diff over the upper triangle.
void write_pair_csv(std::ostream& out, const PairPhaseMatrix& crp, const PairPhaseMatrix& mode);

}  // namespace kinchain
