#pragma once

#include <cstdint>
#include <optional>

#include "kinchain/core.hpp"

namespace kinchain {

struct CorrelationReport {
  double rho = 0.0;
  double p_asymptotic = 1.0;
  std::optional<double> p_permutation;
  Index n = 0;
  int n_perm = 0;
  std::uint64_t seed = 0;
};

/// 1-based ranks; tied values share the average of their ranks.
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Spearman rank correlation with the two-sided t-approximation p value.
CorrelationReport spearman(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);

/// Add-one permutation p value: (1 + #{|rho*| >= |rho_obs|}) / (1 + n_perm),
/// shuffling the ranks of y. Each permutation draws from its own counter stream.
double permutation_p(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y, int n_perm,
                     std::uint64_t seed, int threads = 1);

/// spearman() plus permutation_p() in one report.
CorrelationReport spearman_permutation(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Eigen::Ref<const Eigen::VectorXd>& y, int n_perm, std::uint64_t seed,
                                       int threads = 1);

struct CircularMean {
  double mean = 0.0;       // arg of the mean phasor, 0 when degenerate
  double resultant = 0.0;  // R in [0, 1]
  bool degenerate = false;
};

CircularMean circular_mean_resultant(const Eigen::Ref<const Eigen::VectorXd>& angles);

/// Maps to (-pi, pi].
double wrap_angle(double a);

}  // namespace kinchain
