#include "kinchain/chpca.hpp"

#include <numeric>

#include "kinchain/parallel.hpp"
#include "kinchain/rng.hpp"
#include "kinchain/stats.hpp"

namespace kinchain {

ComplexMode make_mode(int index, double eigenvalue, double contribution, const Eigen::VectorXcd& vector) {
  ComplexMode m;
  m.index = index;
  m.eigenvalue = eigenvalue;
  m.contribution = contribution;
  m.vector = vector;
  m.amplitude = vector.cwiseAbs();
  m.hodge.resize(vector.size());
  for (Index i = 0; i < vector.size(); ++i) m.hodge(i) = wrap_angle(std::arg(vector(i)));
  return m;
}

std::vector<ComplexMode> eig_hermitian(const Eigen::MatrixXcd& c, EigenPath path) {
  const auto eig = hermitian_eigen<double>(c, path);
  const double total = eig.values.sum();
  std::vector<ComplexMode> modes;
  modes.reserve(eig.values.size());
  for (Index k = 0; k < eig.values.size(); ++k) {
    const double share = total != 0.0 ? eig.values(k) / total : 0.0;
    modes.push_back(make_mode(static_cast<int>(k + 1), eig.values(k), share, eig.vectors.col(k)));
  }
  return modes;
}

Eigen::MatrixXcd circular_shift_columns(const Eigen::MatrixXcd& z, std::span<const Index> shifts) {
  const Index t = z.rows();
  if (static_cast<Index>(shifts.size()) != z.cols()) throw ShapeError("one shift per column required");
  Eigen::MatrixXcd out(t, z.cols());
  for (Index c = 0; c < z.cols(); ++c) {
    const Index s = ((shifts[c] % t) + t) % t;
    out.col(c).head(t - s) = z.col(c).tail(t - s);
    out.col(c).tail(s) = z.col(c).head(s);
  }
  return out;
}

RrsReport rrs_test(const Eigen::MatrixXcd& z, int n_shuffles, double percentile, std::uint64_t seed, int threads) {
  if (n_shuffles < 1) throw DataError("n_shuffles must be at least 1");
  if (!(percentile > 0.0 && percentile <= 100.0)) throw DataError("percentile must lie in (0, 100]");
  const Index n = z.cols();
  const Index t = z.rows();
  RrsReport rep;
  rep.n_shuffles = n_shuffles;
  rep.percentile = percentile;
  rep.seed = seed;
  rep.observed = correlation_spectrum(z);

  Eigen::MatrixXd null(n_shuffles, n);
  parallel_for(n_shuffles, threads, [&](Index s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    std::vector<Index> shifts(n);
    for (auto& sh : shifts) sh = static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(t)));
    null.row(s) = correlation_spectrum(circular_shift_columns(z, shifts)).transpose();
  });

  const double tail = (100.0 - percentile) * n_shuffles / 100.0;
  const Index k = std::clamp<Index>(static_cast<Index>(std::ceil(tail - 1e-9)), 1, n_shuffles);
  rep.null_mean = null.colwise().mean().transpose();
  rep.null_sd.resize(n);
  rep.thresholds.resize(n);
  for (Index m = 0; m < n; ++m) {
    Eigen::VectorXd col = null.col(m);
    const double var = n_shuffles > 1 ? (col.array() - rep.null_mean(m)).square().sum() / (n_shuffles - 1) : 0.0;
    rep.null_sd(m) = std::sqrt(var);
    std::sort(col.data(), col.data() + col.size(), std::greater<>());
    rep.thresholds(m) = col(k - 1);
    if (rep.observed(m) > rep.thresholds(m)) rep.significant_modes.push_back(static_cast<int>(m + 1));
  }
  return rep;
}

ChpcaResult run_chpca(const AnalyticMatrix& z, const ChpcaOptions& options) {
  ChpcaResult result;
  result.labels = z.labels;
  result.frames = z.frames;
  result.samples = z.samples();
  result.placement = options.placement;
  const Eigen::MatrixXcd c = complex_correlation(z.values);
  result.modes = eig_hermitian(c);
  if (options.rrs)
    result.rrs = rrs_test(z.values, options.rrs->n_shuffles, options.rrs->percentile, options.rrs->seed, options.threads);
  return result;
}

ChpcaResult run_chpca(const SpeedSeries& speed, const FrameSelection& frames, std::span<const Index> points,
                      const ChpcaOptions& options) {
  const auto z = build_analytic_matrix(speed.values, speed.labels, frames, points, options.placement, options.threads);
  return run_chpca(z, options);
}

ComplexMode align_to_reference(const ComplexMode& mode, Index reference) {
  if (reference < 0 || reference >= mode.size()) throw LookupError("reference index out of range");
  const auto pivot = mode.vector(reference);
  const double mag = std::abs(pivot);
  if (!(mag > 0.0)) throw DegenerateError("reference variable has zero amplitude; phase undefined");
  ComplexMode out = mode;
  out.vector *= std::conj(pivot) / mag;
  out.vector(reference) = mag;
  for (Index i = 0; i < out.size(); ++i) out.hodge(i) = wrap_angle(std::arg(out.vector(i)));
  out.hodge(reference) = 0.0;
  return out;
}

TrialEnsemble ensemble_average(std::span<const ComplexMode> per_trial, Index reference) {
  if (per_trial.size() < 2) throw DataError("ensemble averaging needs at least 2 trials");
  const Index n = per_trial.front().size();
  TrialEnsemble ens;
  for (const auto& m : per_trial) {
    if (m.size() != n) throw ShapeError("trial modes differ in variable count");
    ens.modes.push_back(align_to_reference(m, reference));
    ens.mean_contribution += m.contribution;
  }
  ens.mean_contribution /= static_cast<double>(per_trial.size());
  ens.mean_hodge.resize(n);
  ens.resultant_length.resize(n);
  Eigen::VectorXd phases(static_cast<Index>(ens.modes.size()));
  for (Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ens.modes.size(); ++k) phases(static_cast<Index>(k)) = ens.modes[k].hodge(i);
    const auto cm = circular_mean_resultant(phases);
    ens.mean_hodge(i) = cm.mean;
    ens.resultant_length(i) = cm.resultant;
  }
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < ens.modes.size(); ++a)
    for (std::size_t b = a + 1; b < ens.modes.size(); ++b) {
      sum += spearman(ens.modes[a].hodge, ens.modes[b].hodge).rho;
      ++pairs;
    }
  ens.consistency = sum / pairs;
  return ens;
}

}  // namespace kinchain
