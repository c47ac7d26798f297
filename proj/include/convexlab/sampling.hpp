#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "convexlab/geometry.hpp"
#include "convexlab/random.hpp"
#include "convexlab/stats.hpp"

namespace convexlab::sampling {

enum class Method { kRejection, kHitAndRun };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SamplerConfig {
  Method method = Method::kRejection;
  std::optional<long> burn_in;   // default 10 n^2
  std::optional<long> thinning;  // default n
  std::uint64_t master_seed = 0;
  std::optional<Vector> start_point;  // default: body.interior_point()
  // Points emitted per hit-and-run chain. Chains are laid out over fixed
  // index blocks, so output does not depend on the worker count.
  long chain_length = 1;
  int workers = 1;

  long burn_in_for(Eigen::Index n) const { return burn_in.value_or(10 * n * n); }
  long thinning_for(Eigen::Index n) const { return thinning.value_or(n); }
  void validate() const;
};

// Rejection for bodies of dimension <= 6 with a known volume filling at
// least 1e-4 of the bounding box, hit-and-run otherwise.
Method default_method(const geometry::ConvexBody& body);
SamplerConfig default_config(const geometry::ConvexBody& body, std::uint64_t seed);

struct SampleBatch {
  PointSet points;  // n x N
  std::string body_id;
  SamplerConfig config;
  std::vector<std::uint64_t> substream_ids;  // per point

  Eigen::Index dim() const { return points.rows(); }
  Eigen::Index size() const { return points.cols(); }
};

inline constexpr long kMaxConsecutiveRejections = 10'000'000;

SampleBatch sample_uniform(const geometry::ConvexBody& body, std::size_t count,
                           const SamplerConfig& config);

// One hit-and-run move from an interior point.
Vector hit_and_run_step(const geometry::ConvexBody& body, const Vector& current, Substream& rng);

struct MarginalReport {
  std::vector<stats::KsResult> per_coordinate;
  double min_p_value() const;
  double max_statistic() const;
};

// Per-coordinate two-sample KS comparison of two batches.
MarginalReport marginal_diagnostics(const SampleBatch& batch, const SampleBatch& reference);

// Batch export: CSV "idx,x0,...,x{n-1}" plus a JSON sidecar.
std::string batch_csv(const SampleBatch& batch);
nlohmann::json batch_sidecar(const SampleBatch& batch);
// Reads the points of a batch CSV (or any CSV whose header starts with idx).
PointSet read_points_csv(const std::string& path);

// Shortest round-trip decimal rendering used by every CSV writer.
std::string format_double(double v);

}  // namespace convexlab::sampling
