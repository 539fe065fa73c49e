#include <doctest.h>

#include <numbers>
#include <random>

#include "kinchain/analytic.hpp"
#include "oracles.hpp"

using namespace kinchain;
using std::numbers::pi;

TEST_CASE("pure tone gives a complex exponential") {
  for (Index n : {64, 65, 512}) {
    const int k = static_cast<int>(n / 5);
    Eigen::VectorXd x(n);
    for (Index t = 0; t < n; ++t) x(t) = std::cos(2 * pi * k * t / n);
    const Eigen::VectorXcd z = hilbert_analytic(x);
    double err = 0;
    for (Index t = 0; t < n; ++t) err = std::max(err, std::abs(z(t) - std::polar(1.0, 2 * pi * k * t / n)));
    CHECK(err < 1e-9);
    // Phase advances by exactly 2 pi k / n per frame.
    for (Index t = 1; t < n; ++t) {
      const double step = std::arg(z(t) * std::conj(z(t - 1)));
      CHECK(std::abs(step - 2 * pi * k / n) < 1e-9);
    }
  }
}

TEST_CASE("constant input maps to zero") {
  const Eigen::VectorXcd z = hilbert_analytic(Eigen::VectorXd::Constant(16, 3.2));
  CHECK(z.cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(hilbert_analytic(Eigen::VectorXd::Zero(1)), DataError);
}

TEST_CASE("imaginary part matches the quadrature oracle") {
  for (Index n : {50, 51, 128}) {
    Eigen::VectorXd x(n);
    for (Index t = 0; t < n; ++t) x(t) = std::cos(2 * pi * 3 * t / n) + 0.3 * std::cos(2 * pi * 9 * t / n + 0.4) + 0.1;
    const Eigen::VectorXcd z = hilbert_analytic(x);
    const Eigen::VectorXd h = oracle::hilbert_quadrature(x);
    CHECK((z.imag() - h).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((z.real().array() - (x.array() - x.mean())).abs().maxCoeff() < 1e-10);
  }
  // Broadband input, including the Nyquist bin for even length.
  std::mt19937 gen(5);
  std::normal_distribution<double> d;
  for (Index n : {31, 32}) {
    Eigen::VectorXd x(n);
    for (auto& v : x) v = d(gen);
    CHECK((hilbert_analytic(x).imag() - oracle::hilbert_quadrature(x)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("linearity") {
  std::mt19937 gen(9);
  std::normal_distribution<double> d;
  Eigen::VectorXd x(100), y(100);
  for (auto& v : x) v = d(gen);
  for (auto& v : y) v = d(gen);
  const Eigen::VectorXd mix = 2.5 * x - 0.7 * y;
  const Eigen::VectorXcd lhs = hilbert_analytic(mix);
  const Eigen::VectorXcd rhs = 2.5 * hilbert_analytic(x) - 0.7 * hilbert_analytic(y);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("standardize_complex") {
  Eigen::VectorXd x(64);
  for (Index t = 0; t < 64; ++t) x(t) = 5 * std::cos(2 * pi * 4 * t / 64.0);
  const Eigen::VectorXcd z = standardize_complex(hilbert_analytic(x));
  CHECK(std::abs(z.squaredNorm() / 64 - 1) < 1e-12);
  CHECK(std::abs(z.mean()) < 1e-12);
  CHECK(z.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z.cwiseAbs().minCoeff() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((standardize_complex(z) - z).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXcd flat = Eigen::VectorXcd::Constant(8, {1, 2});
  try {
    standardize_complex(flat, "wrist");
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    CHECK(std::string(e.what()).find("wrist") != std::string::npos);
  }
}

TEST_CASE("build_analytic_matrix") {
  std::mt19937 gen(1);
  std::normal_distribution<double> d;
  Eigen::MatrixXd s(60, 4);
  for (Index i = 0; i < s.size(); ++i) s(i) = std::abs(d(gen));
  s.col(3) = s.col(1);
  const Labels labels = {"a", "b", "c", "d"};

  const auto z = build_analytic_matrix(s, labels, {{10, 26}});
  CHECK(z.samples() == 16);
  CHECK(z.variables() == 4);
  CHECK((z.values.col(1) - z.values.col(3)).cwiseAbs().maxCoeff() == 0.0);
  for (Index c = 0; c < 4; ++c) {
    CHECK(std::abs(z.values.col(c).mean()) < 1e-9);
    CHECK(std::abs(z.values.col(c).squaredNorm() / 16 - 1) < 1e-9);
  }

  SUBCASE("concatenated selection length") {
    const FrameSelection sel = {{0, 12}, {20, 31}, {40, 55}};
    CHECK(build_analytic_matrix(s, labels, sel).samples() == 38);
    CHECK(build_analytic_matrix(s, labels, sel, {}, TransformPlacement::per_segment).samples() == 38);
  }
  SUBCASE("column order only permutes columns") {
    const std::vector<Index> order = {2, 0, 3};
    const auto sub = build_analytic_matrix(s, labels, {{5, 50}}, order);
    const auto all = build_analytic_matrix(s, labels, {{5, 50}});
    CHECK(sub.labels == Labels{"c", "a", "d"});
    for (std::size_t k = 0; k < order.size(); ++k)
      CHECK((sub.values.col(k) - all.values.col(order[k])).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("threads do not change the result") {
    const auto a = build_analytic_matrix(s, labels, {{0, 60}}, {}, TransformPlacement::joined, 1);
    const auto b = build_analytic_matrix(s, labels, {{0, 60}}, {}, TransformPlacement::joined, 3);
    CHECK(a.values == b.values);
  }
  SUBCASE("per-segment placement transforms each piece separately") {
    const FrameSelection sel = {{0, 20}, {30, 50}};
    const auto z2 = build_analytic_matrix(s, labels, sel, {}, TransformPlacement::per_segment);
    Eigen::VectorXcd expected(40);
    expected << hilbert_analytic(s.col(0).segment(0, 20)), hilbert_analytic(s.col(0).segment(30, 20));
    CHECK((z2.values.col(0) - standardize_complex(expected)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("errors") {
    Eigen::MatrixXd still = s;
    still.col(2).setConstant(0.4);
    CHECK_THROWS_AS(build_analytic_matrix(still, labels, {{0, 60}}), DegenerateError);
    CHECK_THROWS_AS(build_analytic_matrix(s, labels, {{0, 3}}), DataError);
    const std::vector<Index> one = {0};
    CHECK_THROWS_AS(build_analytic_matrix(s, labels, {{0, 60}}, one), DataError);
    CHECK_THROWS_AS(build_analytic_matrix(s, labels, {{50, 70}}), DataError);
  }
}
