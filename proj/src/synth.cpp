#include "kinchain/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace kinchain {

SpeedSeries gen_phase_lagged_speeds(const OscillatorSpec& spec, Index samples) {
  const Index n = spec.n_points;
  if (n < 1) throw DataError("oscillator needs at least one point");
  const auto lags = spec.phase_lags.empty() ? std::vector<double>(n, 0.0) : spec.phase_lags;
  const auto amps = spec.amplitudes.empty() ? std::vector<double>(n, 1.0) : spec.amplitudes;
  if (static_cast<Index>(lags.size()) != n || static_cast<Index>(amps.size()) != n)
    throw ShapeError("phase_lags and amplitudes need one entry per point");
  for (double a : amps)
    if (!(a > 0.0)) throw DataError("oscillator amplitudes must be positive");
  if (!(spec.mode2_fraction >= 0.0 && spec.mode2_fraction < 1.0)) throw DataError("mode2_fraction must lie in [0, 1)");
  if (spec.noise_sd < 0.0) throw DataError("noise_sd must be nonnegative");
  const double f1 = spec.base_frequency;
  const double f2 = 2.0 * f1 + 1.0;
  // T >= 4 periods of T / f samples reduces to f >= 4.
  if (!(f1 >= 4.0)) throw DataError("series must span at least 4 base periods");
  if (spec.mode2_fraction > 0.0 && 2.0 * f2 >= static_cast<double>(samples))
    throw DataError("second-mode frequency exceeds Nyquist");

  const double w1 = 2.0 * std::numbers::pi * f1 / static_cast<double>(samples);
  const double w2 = 2.0 * std::numbers::pi * f2 / static_cast<double>(samples);
  const double c1 = std::sqrt(1.0 - spec.mode2_fraction);
  const double c2 = std::sqrt(spec.mode2_fraction);
  const double peak = *std::max_element(amps.begin(), amps.end()) * (c1 + c2);
  const double offset = peak + 6.0 * spec.noise_sd;

  std::mt19937_64 gen(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  SpeedSeries out;
  out.values.resize(samples, n);
  for (Index i = 0; i < n; ++i) out.labels.push_back("p" + std::to_string(i));
  for (Index t = 0; t < samples; ++t)
    for (Index i = 0; i < n; ++i) {
      const double td = static_cast<double>(t);
      double v = offset + c1 * amps[i] * std::cos(w1 * td - lags[i]);
      if (c2 > 0.0)
        v += c2 * amps[i] *
             std::cos(w2 * td - lags[i] - 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
      if (spec.noise_sd > 0.0) v += spec.noise_sd * noise(gen);
      if (v < 0.0) throw DataError("generated speed went negative; increase offset margin or lower noise_sd");
      out.values(t, i) = v;
    }
  return out;
}

StrikeSequence gen_strike_sequence(int n_strikes, int rest_after, Index rest_len, double jitter, std::uint64_t seed,
                                   const StrikeShape& shape) {
  if (n_strikes < 1) throw DataError("need at least one strike");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(shape.lead_in + 1), shape.base);
  StrikeSequence out;
  for (int k = 0; k < n_strikes; ++k) {
    const Index bs = std::max<Index>(2, shape.backswing + std::lround(jitter * unit(gen)));
    const Index ds = std::max<Index>(2, shape.downswing + std::lround(0.5 * jitter * unit(gen)));
    const double h = shape.height * (1.0 + (jitter > 0.0 ? 0.1 * unit(gen) : 0.0));
    const Index start = static_cast<Index>(z.size()) - 1;
    for (Index i = 1; i <= bs; ++i) z.push_back(shape.base + h * static_cast<double>(i) / static_cast<double>(bs));
    for (Index i = 1; i <= ds; ++i)
      z.push_back(shape.base + h * (1.0 - static_cast<double>(i) / static_cast<double>(ds)));
    out.starts.push_back(start);
    out.tops.push_back(start + bs);
    out.impacts.push_back(start + bs + ds);
    if (rest_after > 0 && k + 1 == rest_after && k + 1 < n_strikes) z.insert(z.end(), rest_len, shape.base);
  }
  z.insert(z.end(), shape.tail, shape.base);
  if (rest_after > 0 && rest_after < n_strikes)
    out.rest = RestInterval{out.tops[rest_after - 1] + 1, out.tops[rest_after] - 1};
  out.z = Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Index>(z.size()));
  return out;
}

MotionSequence strike_motion(const StrikeSequence& strikes, const Skeleton& skeleton, std::uint64_t seed,
                             double frame_rate) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> gain_dist(0.15, 0.9);
  std::uniform_int_distribution<int> delay_dist(-3, 3);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, 0.001);

  const Index t_len = strikes.z.size();
  const Index n = static_cast<Index>(skeleton.joints.size());
  const Index wrist = skeleton.index_of(skeleton.striking_wrist);
  const double base = strikes.z.minCoeff();
  std::vector<double> gain(n), rest_height(n), sway_phase(n);
  std::vector<int> delay(n);
  for (Index j = 0; j < n; ++j) {
    gain[j] = j == wrist ? 1.0 : gain_dist(gen);
    delay[j] = j == wrist ? 0 : delay_dist(gen);
    rest_height[j] = j == wrist ? 0.0 : 0.1 + 1.5 * static_cast<double>(j) / static_cast<double>(n);
    sway_phase[j] = phase_dist(gen);
  }

  MotionSequence seq;
  seq.frame_rate = frame_rate;
  seq.labels = skeleton.joints;
  seq.positions.assign(t_len, Eigen::MatrixX3d::Zero(n, 3));
  for (Index t = 0; t < t_len; ++t)
    for (Index j = 0; j < n; ++j) {
      const Index src = std::clamp<Index>(t - delay[j], 0, t_len - 1);
      const double td = static_cast<double>(t);
      auto& p = seq.positions[t];
      p(j, 0) = 0.05 * static_cast<double>(j) + 0.01 * std::sin(0.21 * td + sway_phase[j]) + jitter(gen);
      p(j, 1) = 0.02 * std::cos(0.13 * td + sway_phase[j]) + jitter(gen);
      p(j, 2) = j == wrist ? strikes.z(t) : rest_height[j] + gain[j] * (strikes.z(src) - base) + jitter(gen);
    }
  return seq;
}

MotionSequence motion_from_speeds(const SpeedSeries& speed) {
  const Index n = speed.points();
  MotionSequence seq;
  seq.frame_rate = speed.frame_rate;
  seq.labels = speed.labels;
  Eigen::MatrixX3d dir(n, 3);
  for (Index i = 0; i < n; ++i) {
    const double a = 0.7 * static_cast<double>(i);
    dir.row(i) = Eigen::RowVector3d(std::cos(a), std::sin(a), 0.5).normalized();
  }
  Eigen::MatrixX3d pos = Eigen::MatrixX3d::Zero(n, 3);
  seq.positions.push_back(pos);
  for (Index t = 0; t < speed.frames(); ++t) {
    pos += (dir.array().colwise() * speed.values.row(t).transpose().array()).matrix();
    seq.positions.push_back(pos);
  }
  return seq;
}

}  // namespace kinchain
