#include "kinchain/crp.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

#include "kinchain/stats.hpp"

namespace kinchain {

Eigen::VectorXd PairPhaseMatrix::upper_triangle() const {
  const Index n = size();
  Eigen::VectorXd out(n * (n - 1) / 2);
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out(k++) = values(i, j);
  return out;
}

Eigen::VectorXd instantaneous_phase(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() < 2) throw DataError("instantaneous phase needs at least 2 samples");
  if (x.maxCoeff() == x.minCoeff()) throw DegenerateError("constant series has no instantaneous phase");
  const Eigen::VectorXcd z = hilbert_analytic(x);
  Eigen::VectorXd phase(z.size());
  for (Index t = 0; t < z.size(); ++t) phase(t) = std::arg(z(t));
  return phase;
}

PairPhaseMatrix circular_mean_differences(const Eigen::MatrixXd& phases, const Labels& labels) {
  const Index n = phases.cols();
  if (static_cast<Index>(labels.size()) != n) throw ShapeError("label count does not match phase columns");
  Eigen::MatrixXcd unit(phases.rows(), n);
  for (Index c = 0; c < n; ++c)
    for (Index t = 0; t < phases.rows(); ++t) unit(t, c) = std::polar(1.0, phases(t, c));
  const Eigen::MatrixXcd sums = unit.transpose() * unit.conjugate();
  PairPhaseMatrix out;
  out.labels = labels;
  out.values = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double v = wrap_angle(std::arg(sums(i, j)));
      out.values(i, j) = v;
      out.values(j, i) = wrap_angle(-v);
    }
  return out;
}

Eigen::MatrixXd selection_phases(const Eigen::MatrixXd& series, const Labels& labels, const FrameSelection& frames,
                                 std::span<const Index> columns) {
  check_selection(frames, series.rows());
  std::vector<Index> cols(columns.begin(), columns.end());
  if (cols.empty()) {
    cols.resize(series.cols());
    std::iota(cols.begin(), cols.end(), Index{0});
  }
  Eigen::MatrixXd phases(total_length(frames), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    Index row = 0;
    for (const auto& r : frames) {
      try {
        phases.col(static_cast<Index>(k)).segment(row, r.size()) =
            instantaneous_phase(series.col(cols[k]).segment(r.begin, r.size()));
      } catch (const DegenerateError&) {
        throw DegenerateError("variable '" + labels[cols[k]] + "' is constant on frames [" + std::to_string(r.begin) +
                              ", " + std::to_string(r.end) + ")");
      }
      row += r.size();
    }
  }
  return phases;
}

PairPhaseMatrix crp_matrix(const SpeedSeries& speed, const FrameSelection& frames, std::span<const Index> points) {
  const Eigen::MatrixXd phases = selection_phases(speed.values, speed.labels, frames, points);
  Labels labels;
  if (points.empty()) labels = speed.labels;
  else
    for (Index p : points) labels.push_back(speed.labels[p]);
  return circular_mean_differences(phases, labels);
}

PairPhaseMatrix mode_phase_matrix(const ComplexMode& mode, const Labels& labels) {
  const Index n = mode.size();
  if (static_cast<Index>(labels.size()) != n) throw ShapeError("label count does not match mode size");
  PairPhaseMatrix out;
  out.labels = labels;
  out.values = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double v = wrap_angle(mode.hodge(i) - mode.hodge(j));
      out.values(i, j) = v;
      out.values(j, i) = wrap_angle(-v);
    }
  return out;
}

void write_pair_csv(std::ostream& out, const PairPhaseMatrix& crp, const PairPhaseMatrix& mode) {
  if (crp.labels != mode.labels) throw LookupError("pair matrices have different labels");
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  out << "i_label,j_label,crp_diff,mode1_diff\n";
  for (Index i = 0; i < crp.size(); ++i)
    for (Index j = i + 1; j < crp.size(); ++j)
      out << crp.labels[i] << ',' << crp.labels[j] << ',' << num(crp.values(i, j)) << ',' << num(mode.values(i, j))
          << '\n';
}

}  // namespace kinchain
