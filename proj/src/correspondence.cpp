#include "kinchain/correspondence.hpp"

namespace kinchain {

std::string to_string(Scope s) { return s == Scope::skeleton ? "skeleton" : "mesh"; }

std::string to_string(Phase p) {
  switch (p) {
    case Phase::backswing: return "backswing";
    case Phase::downswing: return "downswing";
    case Phase::full: return "full";
  }
  return "full";
}

CorrelationReport amplitude_energy_correlation(const ComplexMode& mode1, const Eigen::Ref<const Eigen::VectorXd>& evar) {
  if (mode1.size() != evar.size()) throw ShapeError("amplitude and energy-variance lengths differ");
  return spearman(mode1.amplitude, evar);
}

CorrelationReport amplitude_energy_correlation(const ChpcaResult& chpca, const Eigen::Ref<const Eigen::VectorXd>& evar) {
  return amplitude_energy_correlation(chpca.mode1(), evar);
}

PairPhaseMatrix energy_phase_matrix(const SpeedSeries& speed, const FrameSelection& frames,
                                    std::span<const Index> points) {
  const Eigen::MatrixXd energy = speed.values.array().square().matrix();
  const Eigen::MatrixXd phases = selection_phases(energy, speed.labels, frames, points);
  Labels labels;
  if (points.empty()) labels = speed.labels;
  else
    for (Index p : points) labels.push_back(speed.labels[p]);
  return circular_mean_differences(phases, labels);
}

CorrelationReport phase_order_reversal(const Eigen::Ref<const Eigen::VectorXd>& hodge_a,
                                       const Eigen::Ref<const Eigen::VectorXd>& hodge_b) {
  return spearman(hodge_a, hodge_b);
}

PhaseComparisonReport compare_pair_matrices(const PairPhaseMatrix& a, const PairPhaseMatrix& b, int n_perm,
                                            std::uint64_t seed, Scope scope, Phase phase, int threads) {
  if (a.labels != b.labels) throw LookupError("pair matrices are over different labels");
  PhaseComparisonReport rep;
  rep.scope = scope;
  rep.phase = phase;
  rep.pair_values_a = a.upper_triangle();
  rep.pair_values_b = b.upper_triangle();
  rep.correlation = n_perm > 0 ? spearman_permutation(rep.pair_values_a, rep.pair_values_b, n_perm, seed, threads)
                               : spearman(rep.pair_values_a, rep.pair_values_b);
  return rep;
}

PhaseComparisonReport crp_chpca_agreement(const PairPhaseMatrix& crp, const ComplexMode& mode, const Labels& mode_labels,
                                          int n_perm, std::uint64_t seed, Scope scope, Phase phase, int threads) {
  return compare_pair_matrices(crp, mode_phase_matrix(mode, mode_labels), n_perm, seed, scope, phase, threads);
}

ThreeAxisResult three_axis_chpca(const VelocitySeries& vel, const FrameSelection& frames, Index reference_point,
                                 int reference_axis, const ChpcaOptions& options) {
  if (reference_point < 0 || reference_point >= vel.points()) throw LookupError("reference point out of range");
  if (reference_axis < 0 || reference_axis > 2) throw LookupError("reference axis must be 0, 1 or 2");
  const auto z = build_analytic_matrix(vel.components(), vel.component_labels(), frames, {}, options.placement,
                                       options.threads);
  ThreeAxisResult out;
  out.chpca = run_chpca(z, options);
  out.reference_column = 3 * reference_point + reference_axis;
  out.aligned_mode1 = align_to_reference(out.chpca.mode1(), out.reference_column);
  out.joints = vel.labels;
  const Index n = vel.points();
  out.joint_phase.resize(n);
  for (int a = 0; a < 3; ++a) out.axis_phase[a].resize(n);
  for (Index i = 0; i < n; ++i) {
    std::complex<double> sum = 0.0;
    for (int a = 0; a < 3; ++a) {
      const Index c = 3 * i + a;
      out.axis_phase[a](i) = out.aligned_mode1.hodge(c);
      sum += std::polar(out.aligned_mode1.amplitude(c), out.aligned_mode1.hodge(c));
    }
    out.joint_phase(i) = std::abs(sum) > 0.0 ? wrap_angle(std::arg(sum)) : 0.0;
  }
  return out;
}

}  // namespace kinchain
