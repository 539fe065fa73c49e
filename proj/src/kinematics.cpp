#include "kinchain/kinematics.hpp"

namespace kinchain {

Eigen::MatrixXd VelocitySeries::components() const {
  Eigen::MatrixXd out(frames(), 3 * points());
  for (Index t = 0; t < frames(); ++t)
    for (Index i = 0; i < points(); ++i) out.row(t).segment<3>(3 * i) = values[t].row(i);
  return out;
}

Labels VelocitySeries::component_labels() const {
  Labels out;
  out.reserve(3 * labels.size());
  for (const auto& l : labels)
    for (const char* axis : {".x", ".y", ".z"}) out.push_back(l + axis);
  return out;
}

VelocitySeries velocity(const MotionSequence& seq) {
  if (seq.frames() < 2) throw DataError("velocity needs at least 2 frames, got " + std::to_string(seq.frames()));
  VelocitySeries vel;
  vel.frame_rate = seq.frame_rate;
  vel.labels = seq.labels;
  vel.values.reserve(seq.frames() - 1);
  for (Index t = 0; t + 1 < seq.frames(); ++t) vel.values.push_back(seq.positions[t + 1] - seq.positions[t]);
  return vel;
}

SpeedSeries speed_norm(const VelocitySeries& vel) {
  SpeedSeries speed;
  speed.frame_rate = vel.frame_rate;
  speed.labels = vel.labels;
  speed.values.resize(vel.frames(), vel.points());
  for (Index t = 0; t < vel.frames(); ++t) speed.values.row(t) = vel.values[t].rowwise().norm().transpose();
  return speed;
}

Eigen::VectorXd energy_variance(const SpeedSeries& speed, const FrameSelection& frames) {
  const Eigen::MatrixXd s2 = gather_rows(speed.values, frames).array().square().matrix();
  const Eigen::RowVectorXd mean = s2.colwise().mean();
  return (s2.rowwise() - mean).array().square().colwise().mean().transpose();
}

}  // namespace kinchain
