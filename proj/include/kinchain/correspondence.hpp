#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "kinchain/chpca.hpp"
#include "kinchain/crp.hpp"
#include "kinchain/stats.hpp"

namespace kinchain {

enum class Scope { skeleton, mesh };
enum class Phase { backswing, downswing, full };

std::string to_string(Scope s);
std::string to_string(Phase p);

struct PhaseComparisonReport {
  Scope scope = Scope::skeleton;
  Phase phase = Phase::full;
  Eigen::VectorXd pair_values_a;
  Eigen::VectorXd pair_values_b;
  CorrelationReport correlation;
};

/// Spearman between Mode-1 amplitudes and per-point Var(s^2).
CorrelationReport amplitude_energy_correlation(const ComplexMode& mode1, const Eigen::Ref<const Eigen::VectorXd>& evar);
CorrelationReport amplitude_energy_correlation(const ChpcaResult& chpca, const Eigen::Ref<const Eigen::VectorXd>& evar);

/// Pairwise circular means of instantaneous-phase differences of the
/// mean-removed s^2 series. Each range of `frames` is transformed separately;
/// phases are concatenated before averaging.
PairPhaseMatrix energy_phase_matrix(const SpeedSeries& speed, const FrameSelection& frames,
                                    std::span<const Index> points = {});

/// Spearman between two Hodge vectors over the same variables.
CorrelationReport phase_order_reversal(const Eigen::Ref<const Eigen::VectorXd>& hodge_a,
                                       const Eigen::Ref<const Eigen::VectorXd>& hodge_b);

/// Upper-triangle pair values of two phase matrices matched by pair, with
/// Spearman and permutation p.
PhaseComparisonReport compare_pair_matrices(const PairPhaseMatrix& a, const PairPhaseMatrix& b, int n_perm,
                                            std::uint64_t seed, Scope scope = Scope::skeleton,
                                            Phase phase = Phase::full, int threads = 1);

/// CRP pair differences against the Mode-1 Hodge differences of `mode`
/// (labels taken from `crp`).
PhaseComparisonReport crp_chpca_agreement(const PairPhaseMatrix& crp, const ComplexMode& mode, const Labels& mode_labels,
                                          int n_perm, std::uint64_t seed, Scope scope = Scope::skeleton,
                                          Phase phase = Phase::full, int threads = 1);

struct ThreeAxisResult {
  ChpcaResult chpca;             // over 3N component variables
  Index reference_column = 0;    // component used as phase reference
  ComplexMode aligned_mode1;     // Mode 1 rotated to the reference component
  Labels joints;
  Eigen::VectorXd joint_phase;   // arg(sum over axes of A e^{j phi}), per joint
  Eigen::VectorXd axis_phase[3]; // aligned Mode-1 phase of each axis component
};

/// CHPCA on the x/y/z velocity components of every point (3N variables).
/// `reference_point`/`reference_axis` select the phase reference component.
ThreeAxisResult three_axis_chpca(const VelocitySeries& vel, const FrameSelection& frames, Index reference_point,
                                 int reference_axis = 0, const ChpcaOptions& options = {});

}  // namespace kinchain
