#include "kinchain/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "kinchain/parallel.hpp"
#include "kinchain/rng.hpp"

namespace kinchain {

namespace {

void check_pair(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw ShapeError("correlation inputs differ in length");
  if (x.size() < 3) throw DataError("correlation needs at least 3 samples");
  if (!x.allFinite() || !y.allFinite()) throw DataError("correlation inputs contain non-finite values");
}

// Centred, unit-norm rank vector.
Eigen::VectorXd normalized_ranks(const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd r = average_ranks(x);
  r.array() -= r.mean();
  const double norm = r.norm();
  if (!(norm > 0.0)) throw DegenerateError("rank variance is zero; correlation is undefined");
  return r / norm;
}

}  // namespace

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Index n = x.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x(a) < x(b); });
  Eigen::VectorXd ranks(n);
  for (Index i = 0; i < n;) {
    Index j = i;
    while (j + 1 < n && x(order[j + 1]) == x(order[i])) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Index k = i; k <= j; ++k) ranks(order[k]) = avg;
    i = j + 1;
  }
  return ranks;
}

CorrelationReport spearman(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_pair(x, y);
  CorrelationReport rep;
  rep.n = x.size();
  rep.rho = std::clamp(normalized_ranks(x).dot(normalized_ranks(y)), -1.0, 1.0);
  const double df = static_cast<double>(rep.n - 2);
  const double denom = 1.0 - rep.rho * rep.rho;
  if (denom <= 0.0) {
    rep.p_asymptotic = 0.0;
  } else {
    const double t = rep.rho * std::sqrt(df / denom);
    boost::math::students_t dist(df);
    rep.p_asymptotic = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return rep;
}

double permutation_p(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y, int n_perm,
                     std::uint64_t seed, int threads) {
  check_pair(x, y);
  if (n_perm < 1) throw DataError("n_perm must be at least 1");
  const Eigen::VectorXd rx = normalized_ranks(x);
  const Eigen::VectorXd ry = normalized_ranks(y);
  const double observed = std::abs(std::clamp(rx.dot(ry), -1.0, 1.0));
  // Relative slack so that a permutation reproducing the observed value counts.
  const double bar = observed - 1e-12;
  const Index n = x.size();
  std::vector<char> exceeds(n_perm, 0);
  parallel_for(n_perm, threads, [&](Index k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<Index>(rng.uniform_below(static_cast<std::uint64_t>(i + 1)))]);
    double r = 0.0;
    for (Index i = 0; i < n; ++i) r += rx(i) * ry(perm[i]);
    exceeds[k] = std::abs(r) >= bar;
  });
  const auto count = std::count(exceeds.begin(), exceeds.end(), 1);
  return static_cast<double>(1 + count) / static_cast<double>(1 + n_perm);
}

CorrelationReport spearman_permutation(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Eigen::Ref<const Eigen::VectorXd>& y, int n_perm, std::uint64_t seed,
                                       int threads) {
  CorrelationReport rep = spearman(x, y);
  rep.p_permutation = permutation_p(x, y, n_perm, seed, threads);
  rep.n_perm = n_perm;
  rep.seed = seed;
  return rep;
}

CircularMean circular_mean_resultant(const Eigen::Ref<const Eigen::VectorXd>& angles) {
  if (angles.size() == 0) throw DataError("circular mean of an empty set");
  std::complex<double> sum = 0.0;
  for (Index i = 0; i < angles.size(); ++i) sum += std::polar(1.0, angles(i));
  sum /= static_cast<double>(angles.size());
  CircularMean out;
  out.resultant = std::min(1.0, std::abs(sum));
  if (out.resultant < 1e-12) {
    out.resultant = 0.0;
    out.degenerate = true;
  } else {
    out.mean = wrap_angle(std::arg(sum));
  }
  return out;
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = a - two_pi * std::round(a / two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

}  // namespace kinchain
