#include <doctest.h>

#include <random>

#include "kinchain/kinematics.hpp"

using namespace kinchain;

namespace {

MotionSequence make_motion(Index t_len, Index n, auto&& fn) {
  MotionSequence seq;
  for (Index i = 0; i < n; ++i) seq.labels.push_back("p" + std::to_string(i));
  for (Index t = 0; t < t_len; ++t) {
    Eigen::MatrixX3d p(n, 3);
    for (Index i = 0; i < n; ++i) p.row(i) = fn(t, i);
    seq.positions.push_back(p);
  }
  return seq;
}

SpeedSeries speeds_of(const Eigen::VectorXd& s) {
  SpeedSeries out;
  out.labels = {"a"};
  out.values = s;
  return out;
}

}  // namespace

TEST_CASE("velocity closed forms") {
  const auto still = make_motion(5, 2, [](Index, Index) { return Eigen::RowVector3d(1, 2, 3); });
  const auto vs = velocity(still);
  CHECK(vs.frames() == 4);
  for (const auto& v : vs.values) CHECK(v.isZero());
  CHECK(speed_norm(vs).values.isZero());

  const auto ramp = make_motion(900, 1, [](Index t, Index) { return Eigen::RowVector3d(double(t), 0, 0); });
  const auto vr = velocity(ramp);
  CHECK(vr.frames() == 899);
  for (const auto& v : vr.values) CHECK(v.row(0) == Eigen::RowVector3d(1, 0, 0));

  MotionSequence one = make_motion(1, 1, [](Index, Index) { return Eigen::RowVector3d::Zero(); });
  CHECK_THROWS_AS(velocity(one), DataError);
}

TEST_CASE("speed norm closed forms") {
  const auto m = make_motion(2, 2, [](Index t, Index i) {
    return t == 0 ? Eigen::RowVector3d::Zero() : (i == 0 ? Eigen::RowVector3d(3, 4, 0) : Eigen::RowVector3d(1, 1, 1));
  });
  const auto s = speed_norm(velocity(m));
  CHECK(s.values(0, 0) == doctest::Approx(5.0));
  CHECK(s.values(0, 1) == doctest::Approx(1.7320508).epsilon(1e-8));
}

TEST_CASE("components layout") {
  const auto m = make_motion(3, 2, [](Index t, Index i) { return Eigen::RowVector3d(t * (i + 1), 2.0 * t, 0); });
  const auto v = velocity(m);
  const Eigen::MatrixXd c = v.components();
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 6);
  CHECK(v.component_labels()[3] == "p1.x");
  CHECK(c(0, 3) == 2.0);
  CHECK(c(0, 4) == 2.0);
}

TEST_CASE("rotation and translation invariance") {
  std::mt19937 gen(3);
  std::normal_distribution<double> d;
  const auto m = make_motion(40, 6, [&](Index, Index) { return Eigen::RowVector3d(d(gen), d(gen), d(gen)); });
  const Eigen::Matrix3d r = Eigen::AngleAxisd(0.83, Eigen::Vector3d(1, -2, 0.5).normalized()).toRotationMatrix();
  MotionSequence moved = m;
  for (auto& p : moved.positions) p = (p * r.transpose()).rowwise() + Eigen::RowVector3d(10, -4, 2);
  const auto a = speed_norm(velocity(m)), b = speed_norm(velocity(moved));
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-12);

  MotionSequence shifted = m;
  for (auto& p : shifted.positions) p.rowwise() += Eigen::RowVector3d(5, 5, 5);
  const auto va = velocity(m), vb = velocity(shifted);
  for (Index t = 0; t < va.frames(); ++t) CHECK((va.values[t] - vb.values[t]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("energy variance") {
  CHECK(energy_variance(speeds_of(Eigen::VectorXd::Constant(10, 0.7)), {{0, 10}})(0) == doctest::Approx(0.0));

  Eigen::VectorXd alt(8);
  alt << 0, 2, 0, 2, 0, 2, 0, 2;
  CHECK(energy_variance(speeds_of(alt), {{0, 8}})(0) == doctest::Approx(4.0));

  // Direct summation oracle, over two disjoint ranges.
  Eigen::VectorXd s(200);
  for (Index t = 0; t < 200; ++t) s(t) = 1.0 + 0.5 * std::sin(0.13 * t);
  double sum = 0, sum2 = 0;
  int n = 0;
  for (Index t = 0; t < 200; ++t) {
    if (!((t >= 10 && t < 60) || (t >= 120 && t < 180))) continue;
    sum += s(t) * s(t);
    ++n;
  }
  const double mean = sum / n;
  for (Index t = 0; t < 200; ++t) {
    if (!((t >= 10 && t < 60) || (t >= 120 && t < 180))) continue;
    sum2 += (s(t) * s(t) - mean) * (s(t) * s(t) - mean);
  }
  const double v = energy_variance(speeds_of(s), {{10, 60}, {120, 180}})(0);
  CHECK(std::abs(v - sum2 / n) < 1e-12);
  CHECK(v > 0);

  CHECK_THROWS_AS(energy_variance(speeds_of(s), {}), DataError);
  CHECK_THROWS_AS(energy_variance(speeds_of(s), {{190, 210}}), DataError);
}
