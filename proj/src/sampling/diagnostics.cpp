#include <algorithm>

#include "convexlab/sampling.hpp"

namespace convexlab::sampling {

double MarginalReport::min_p_value() const {
  double p = 1.0;
  for (const auto& r : per_coordinate) p = std::min(p, r.p_value);
  return p;
}

double MarginalReport::max_statistic() const {
  double d = 0.0;
  for (const auto& r : per_coordinate) d = std::max(d, r.statistic);
  return d;
}

MarginalReport marginal_diagnostics(const SampleBatch& batch, const SampleBatch& reference) {
  if (batch.dim() != reference.dim()) throw DimensionMismatch("batches live in different dimensions");
  if (batch.size() < 100 || reference.size() < 100) {
    throw InvalidArgument("marginal diagnostics need at least 100 points per batch");
  }
  MarginalReport report;
  for (Eigen::Index k = 0; k < batch.dim(); ++k) {
    const Vector a = batch.points.row(k).transpose();
    const Vector b = reference.points.row(k).transpose();
    report.per_coordinate.push_back(stats::ks_two_sample(
        std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
        std::span<const double>(b.data(), static_cast<std::size_t>(b.size()))));
  }
  return report;
}

}  // namespace convexlab::sampling
