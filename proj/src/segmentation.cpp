#include "kinchain/segmentation.hpp"

#include <algorithm>
#include <cmath>

namespace kinchain {

void SegmentationConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(height_floor_fraction)) throw DataError("height_floor_fraction must lie in (0, 1)");
  if (!in_unit(loose_prominence_floor)) throw DataError("loose_prominence_floor must lie in (0, 1)");
  if (!(rest_gap_factor > 1.0)) throw DataError("rest_gap_factor must exceed 1");
  if (!(uniform_prominence_ratio > 0.0 && uniform_prominence_ratio <= 1.0))
    throw DataError("uniform_prominence_ratio must lie in (0, 1]");
}

FrameSelection SegmentationResult::backswings() const {
  FrameSelection out;
  for (const auto& t : trials) out.push_back(t.backswing());
  return out;
}

FrameSelection SegmentationResult::downswings() const {
  FrameSelection out;
  for (const auto& t : trials) out.push_back(t.downswing());
  return out;
}

namespace {

// Prominence with the usual lowest-contour definition: walk outwards until a
// strictly higher sample (or the edge), take the higher of the two minima.
double prominence_at(const Eigen::Ref<const Eigen::VectorXd>& z, Index left_edge, Index right_edge) {
  const double peak = z(left_edge);
  const Index n = z.size();
  double left_min = peak;
  for (Index i = left_edge - 1; i >= 0 && z(i) <= peak; --i) left_min = std::min(left_min, z(i));
  double right_min = peak;
  for (Index i = right_edge + 1; i < n && z(i) <= peak; ++i) right_min = std::min(right_min, z(i));
  return peak - std::max(left_min, right_min);
}

}  // namespace

std::vector<PeakCandidate> detect_candidate_tops(const Eigen::Ref<const Eigen::VectorXd>& z,
                                                 const SegmentationConfig& cfg) {
  if (z.size() < 3) throw DataError("segmentation needs at least 3 samples");
  if (!z.allFinite()) throw DataError("segmentation signal contains non-finite values");
  const double range = z.maxCoeff() - z.minCoeff();
  std::vector<PeakCandidate> out;
  if (range <= 0.0) return out;
  const double floor = cfg.loose_prominence_floor * range;
  const Index n = z.size();
  Index i = 1;
  while (i < n - 1) {
    if (z(i - 1) < z(i)) {
      Index j = i;
      while (j + 1 < n - 1 && z(j + 1) == z(i)) ++j;
      if (z(j + 1) < z(i)) {
        const double prom = prominence_at(z, i, j);
        if (prom >= floor) out.push_back({(i + j) / 2, prom});
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return out;
}

double prominence_elbow_split(std::span<const double> p, double uniform_ratio) {
  if (p.empty()) throw DataError("prominence list is empty");
  const double hi = p.front();
  const double lo = p.back();
  if (p.size() == 1 || hi == lo || lo >= uniform_ratio * hi) return lo;
  // Farthest point from the chord joining the first and last samples. The
  // perpendicular distance is |residual| / const, so compare residuals.
  const double n1 = static_cast<double>(p.size() - 1);
  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double chord = hi + (lo - hi) * static_cast<double>(k) / n1;
    const double d = std::abs(p[k] - chord);
    if (d > best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return 0.5 * (p[best] + p[best + 1]);
}

SegmentationResult segment_phases(const Eigen::Ref<const Eigen::VectorXd>& z, const SegmentationConfig& cfg) {
  cfg.validate();
  SegmentationResult result;
  result.candidates = detect_candidate_tops(z, cfg);
  if (result.candidates.empty()) throw DataError("no candidate tops found; cannot segment");

  std::vector<double> proms;
  for (const auto& c : result.candidates) proms.push_back(c.prominence);
  std::sort(proms.begin(), proms.end(), std::greater<>());
  result.prominence_threshold = prominence_elbow_split(proms, cfg.uniform_prominence_ratio);

  const double zmin = z.minCoeff();
  const double height_floor = zmin + cfg.height_floor_fraction * (z.maxCoeff() - zmin);
  for (const auto& c : result.candidates)
    if (c.prominence >= result.prominence_threshold && z(c.frame) >= height_floor) result.tops.push_back(c.frame);
  if (result.tops.empty()) throw DataError("no strike tops survived filtering; cannot segment");

  if (result.tops.size() > 2) {
    std::vector<double> gaps;
    for (std::size_t k = 1; k < result.tops.size(); ++k)
      gaps.push_back(static_cast<double>(result.tops[k] - result.tops[k - 1]));
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    for (std::size_t k = 0; k < gaps.size(); ++k)
      if (gaps[k] > cfg.rest_gap_factor * median) result.rests.push_back({result.tops[k] + 1, result.tops[k + 1] - 1});
  }

  const Index n = z.size();
  Index lower_bound = 0;
  for (std::size_t k = 0; k < result.tops.size(); ++k) {
    const Index top = result.tops[k];
    const Index upper_bound = k + 1 < result.tops.size() ? result.tops[k + 1] : n - 1;
    // Leave the top's own plateau, then descend while z keeps decreasing.
    Index start = top;
    while (start > lower_bound && z(start - 1) == z(top)) --start;
    while (start > lower_bound && z(start - 1) < z(start)) --start;
    Index impact = top;
    while (impact < upper_bound && z(impact + 1) == z(top)) ++impact;
    while (impact < upper_bound && z(impact + 1) < z(impact)) ++impact;
    if (start == top || impact == top)
      throw DataError("top at frame " + std::to_string(top) + " has an empty backswing or downswing");
    result.trials.push_back({start, top, impact});
    lower_bound = impact;
  }
  return result;
}

}  // namespace kinchain
