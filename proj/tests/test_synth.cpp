#include <doctest.h>

#include <numbers>
#include <numeric>

#include "kinchain/chpca.hpp"
#include "kinchain/serialize.hpp"
#include "kinchain/synth.hpp"

using namespace kinchain;
using std::numbers::pi;

namespace {

double max_lag_error(const OscillatorSpec& spec, Index samples) {
  const auto res = run_chpca(gen_phase_lagged_speeds(spec, samples), {{0, samples}});
  const auto m = align_to_reference(res.mode1(), 0);
  double err = 0;
  for (Index i = 0; i < spec.n_points; ++i)
    err = std::max(err, std::abs(std::remainder(-m.hodge(i) - (spec.phase_lags[i] - spec.phase_lags[0]), 2 * pi)));
  return err;
}

}  // namespace

TEST_CASE("oscillator planted truth") {
  OscillatorSpec spec;
  spec.n_points = 3;
  spec.phase_lags = {0, pi / 4, pi / 2};
  const SpeedSeries s = gen_phase_lagged_speeds(spec, 256);
  CHECK(s.values.minCoeff() >= 0.0);
  CHECK(s.points() == 3);
  CHECK(s.frames() == 256);
  CHECK(max_lag_error(spec, 256) < 0.02);
  CHECK(std::abs(run_chpca(s, {{0, 256}}).mode1().contribution - 1.0) < 1e-6);
}

TEST_CASE("amplitude ordering is recovered under noise") {
  OscillatorSpec spec;
  spec.n_points = 6;
  spec.amplitudes = {1.0, 3.0, 0.5, 2.0, 4.0, 1.5};
  spec.phase_lags = {0, 0.5, 1.0, 1.5, 2.0, 2.5};
  spec.noise_sd = 0.5;
  spec.seed = 2;
  const auto m = run_chpca(gen_phase_lagged_speeds(spec, 4096), {{0, 4096}}).mode1();
  std::vector<Index> by_amp(6), by_planted(6);
  std::iota(by_amp.begin(), by_amp.end(), 0);
  by_planted = by_amp;
  std::sort(by_amp.begin(), by_amp.end(), [&](Index a, Index b) { return m.amplitude(a) < m.amplitude(b); });
  std::sort(by_planted.begin(), by_planted.end(), [&](Index a, Index b) { return spec.amplitudes[a] < spec.amplitudes[b]; });
  CHECK(by_amp == by_planted);
}

TEST_CASE("hodge error grows with noise on average") {
  OscillatorSpec spec;
  spec.n_points = 8;
  spec.phase_lags = {0, 0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8};
  std::vector<double> mean_err;
  for (double sd : {0.05, 0.3, 1.0, 3.0}) {
    spec.noise_sd = sd;
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      spec.seed = seed;
      sum += max_lag_error(spec, 256);
    }
    mean_err.push_back(sum / 50);
  }
  for (std::size_t k = 1; k < mean_err.size(); ++k) CHECK(mean_err[k] > mean_err[k - 1]);
}

TEST_CASE("oscillator errors") {
  OscillatorSpec spec;
  spec.n_points = 2;
  spec.base_frequency = 3;
  CHECK_THROWS_AS(gen_phase_lagged_speeds(spec, 128), DataError);
  spec.base_frequency = 8;
  spec.amplitudes = {1.0, -1.0};
  CHECK_THROWS_AS(gen_phase_lagged_speeds(spec, 128), DataError);
  spec.amplitudes = {1.0};
  CHECK_THROWS_AS(gen_phase_lagged_speeds(spec, 128), ShapeError);
  spec.amplitudes = {};
  spec.mode2_fraction = 1.0;
  CHECK_THROWS_AS(gen_phase_lagged_speeds(spec, 128), DataError);
}

TEST_CASE("strike sequence planted boundaries") {
  const StrikeShape shape;
  const auto s = gen_strike_sequence(14, 11, 120, 0.0, 1, shape);
  REQUIRE(s.tops.size() == 14);
  REQUIRE(s.rest);
  CHECK(s.rest->first == s.tops[10] + 1);
  CHECK(s.rest->last == s.tops[11] - 1);
  for (std::size_t k = 0; k < 14; ++k) {
    CHECK(s.z(s.tops[k]) == doctest::Approx(shape.base + shape.height));
    CHECK(s.z(s.starts[k]) == shape.base);
    CHECK(s.z(s.impacts[k]) == doctest::Approx(shape.base));
    CHECK(s.tops[k] - s.starts[k] == shape.backswing);
    CHECK(s.impacts[k] - s.tops[k] == shape.downswing);
  }
  CHECK_FALSE(gen_strike_sequence(1, 0, 0, 0.0, 0).rest);
  CHECK_THROWS_AS(gen_strike_sequence(0, 0, 0, 0.0, 0), DataError);

  const auto a = gen_strike_sequence(5, 0, 0, 3.0, 9), b = gen_strike_sequence(5, 0, 0, 3.0, 9);
  CHECK(a.z == b.z);
}

TEST_CASE("strike motion and speed integration") {
  const Skeleton sk = default_skeleton();
  const auto s = gen_strike_sequence(3, 0, 0, 1.0, 4);
  const MotionSequence m = strike_motion(s, sk, 4);
  CHECK(m.labels == sk.joints);
  CHECK(m.frames() == s.z.size());
  CHECK(m.coordinate(m.index_of(sk.striking_wrist), 2) == s.z);
  CHECK_NOTHROW(validate(m));

  OscillatorSpec spec;
  spec.n_points = 4;
  spec.phase_lags = {0, 1, 2, 3};
  const SpeedSeries speed = gen_phase_lagged_speeds(spec, 64);
  const MotionSequence mm = motion_from_speeds(speed);
  CHECK(mm.frames() == 65);
  CHECK((speed_norm(velocity(mm)).values - speed.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("oscillator spec json round trip") {
  OscillatorSpec spec;
  spec.n_points = 2;
  spec.base_frequency = 6;
  spec.phase_lags = {0.1, -0.2};
  spec.amplitudes = {1, 2};
  spec.noise_sd = 0.25;
  spec.mode2_fraction = 0.1;
  spec.seed = 77;
  const auto back = nlohmann::json(spec).get<OscillatorSpec>();
  CHECK(back.n_points == 2);
  CHECK(back.base_frequency == 6);
  CHECK(back.phase_lags == spec.phase_lags);
  CHECK(back.amplitudes == spec.amplitudes);
  CHECK(back.noise_sd == 0.25);
  CHECK(back.mode2_fraction == 0.1);
  CHECK(back.seed == 77);
}

TEST_CASE("chpca json round trip") {
  OscillatorSpec spec;
  spec.n_points = 4;
  spec.phase_lags = {0, 0.3, 0.6, 0.9};
  spec.noise_sd = 0.1;
  ChpcaOptions opts;
  opts.rrs = RrsOptions{20, 99.0, 3};
  const auto res = run_chpca(gen_phase_lagged_speeds(spec, 128), {{0, 64}, {64, 128}}, {}, opts);
  const auto j = chpca_to_json(res);
  const auto back = chpca_from_json(j);
  CHECK(back.labels == res.labels);
  CHECK(back.frames == res.frames);
  CHECK(back.samples == 128);
  REQUIRE(back.modes.size() >= 2);
  CHECK(back.modes[0].eigenvalue == res.modes[0].eigenvalue);
  CHECK((back.modes[0].vector - res.modes[0].vector).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(j.at("rrs").at("seed") == 3);
  CHECK(j.dump() == chpca_to_json(back).dump());
}
