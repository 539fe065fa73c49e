#include "kinchain/analytic.hpp"

#include <numeric>

namespace kinchain {

Eigen::VectorXcd analytic_over_selection(const Eigen::Ref<const Eigen::VectorXd>& column, const FrameSelection& frames,
                                         TransformPlacement placement) {
  check_selection(frames, column.size());
  if (placement == TransformPlacement::joined) {
    const Eigen::VectorXd joined = gather_rows(column, frames);
    return hilbert_analytic(joined);
  }
  Eigen::VectorXcd out(total_length(frames));
  Index row = 0;
  for (const auto& r : frames) {
    out.segment(row, r.size()) = hilbert_analytic(column.segment(r.begin, r.size()));
    row += r.size();
  }
  return out;
}

AnalyticMatrix build_analytic_matrix(const Eigen::MatrixXd& series, const Labels& labels, const FrameSelection& frames,
                                     std::span<const Index> columns_subset, TransformPlacement placement,
                                     int threads) {
  if (static_cast<Index>(labels.size()) != series.cols()) throw ShapeError("label count does not match column count");
  check_selection(frames, series.rows());
  std::vector<Index> cols(columns_subset.begin(), columns_subset.end());
  if (cols.empty()) {
    cols.resize(series.cols());
    std::iota(cols.begin(), cols.end(), Index{0});
  }
  if (cols.size() < 2) throw DataError("analytic matrix needs at least 2 variables");
  if (total_length(frames) < 4) throw DataError("analytic matrix needs at least 4 samples");
  for (Index c : cols)
    if (c < 0 || c >= series.cols()) throw LookupError("column index " + std::to_string(c) + " out of range");

  AnalyticMatrix out;
  out.frames = frames;
  out.values.resize(total_length(frames), static_cast<Index>(cols.size()));
  for (Index c : cols) out.labels.push_back(labels[c]);
  parallel_for(static_cast<Index>(cols.size()), threads, [&](Index k) {
    const Eigen::VectorXcd z = analytic_over_selection(series.col(cols[k]), frames, placement);
    out.values.col(k) = standardize_complex(z, labels[cols[k]]);
  });
  return out;
}

}  // namespace kinchain
