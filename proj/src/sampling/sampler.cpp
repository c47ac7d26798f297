#include <cmath>

#include "convexlab/parallel.hpp"
#include "convexlab/sampling.hpp"

namespace convexlab::sampling {

namespace {

constexpr std::uint64_t kRejectionTag = 0x52;
constexpr std::uint64_t kBurnTag = 0xB0;
constexpr std::uint64_t kWalkTag = 0xA1;

}  // namespace

std::string to_string(Method m) {
  return m == Method::kRejection ? "rejection" : "hit_and_run";
}

Method method_from_string(const std::string& s) {
  if (s == "rejection") return Method::kRejection;
  if (s == "hit_and_run" || s == "hit-and-run") return Method::kHitAndRun;
  throw ConfigError("unknown sampler method '" + s + "'");
}

void SamplerConfig::validate() const {
  if (burn_in && *burn_in < 0) throw ConfigError("burn_in must be nonnegative");
  if (thinning && *thinning < 1) throw ConfigError("thinning must be at least 1");
  if (chain_length < 1) throw ConfigError("chain_length must be at least 1");
}

Method default_method(const geometry::ConvexBody& body) {
  if (body.dim() > 6 || !body.known_volume()) return Method::kHitAndRun;
  const auto [lo, hi] = geometry::bounding_box(body);
  const double box = (hi - lo).prod();
  return *body.known_volume() / box >= 1e-4 ? Method::kRejection : Method::kHitAndRun;
}

SamplerConfig default_config(const geometry::ConvexBody& body, std::uint64_t seed) {
  SamplerConfig config;
  config.method = default_method(body);
  config.master_seed = seed;
  return config;
}

Vector hit_and_run_step(const geometry::ConvexBody& body, const Vector& current, Substream& rng) {
  const Eigen::Index n = body.dim();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Direction u = rng.direction(n);
    const geometry::Chord c = geometry::chord(body, current, u.vec());
    if (!(c.t_minus < 0.0 && c.t_plus > 0.0)) {
      throw InvalidArgument("hit-and-run start point is not interior");
    }
    if (c.length() < 1e-12) continue;
    return current + rng.uniform(c.t_minus, c.t_plus) * u.vec();
  }
  throw NumericFailure("hit-and-run: 100 consecutive degenerate chords");
}

SampleBatch sample_uniform(const geometry::ConvexBody& body, std::size_t count,
                           const SamplerConfig& config) {
  config.validate();
  const Eigen::Index n = body.dim();
  SampleBatch batch;
  batch.body_id = body.label().empty() ? body.kind() : body.label();
  batch.config = config;
  batch.points.resize(n, static_cast<Eigen::Index>(count));
  batch.substream_ids.resize(count);
  if (count == 0) return batch;

  for (std::size_t i = 0; i < count; ++i) {
    batch.substream_ids[i] = derive_seed(config.master_seed, i, 0,
                                         config.method == Method::kRejection ? kRejectionTag : kWalkTag);
  }

  if (config.method == Method::kRejection) {
    const auto [lo, hi] = geometry::bounding_box(body);
    parallel_for(count, config.workers, [&](std::size_t i) {
      Substream rng(batch.substream_ids[i]);
      Vector x(n);
      for (long tries = 0; tries < kMaxConsecutiveRejections; ++tries) {
        for (Eigen::Index k = 0; k < n; ++k) x[k] = rng.uniform(lo[k], hi[k]);
        if (geometry::membership(body, x)) {
          batch.points.col(static_cast<Eigen::Index>(i)) = x;
          return;
        }
      }
      throw SamplerStarvation("rejection sampler: " + std::to_string(kMaxConsecutiveRejections) +
                              " consecutive rejections; use hit_and_run");
    });
    return batch;
  }

  const Vector start = config.start_point.value_or(body.interior_point());
  if (start.size() != n) throw DimensionMismatch("start point dimension");
  if (!geometry::strictly_interior(body, start, 1e-12)) {
    throw InvalidArgument("hit-and-run start point is not interior");
  }
  const long burn_in = config.burn_in_for(n);
  const long thinning = config.thinning_for(n);
  const auto chain_length = static_cast<std::size_t>(config.chain_length);
  const std::size_t chains = (count + chain_length - 1) / chain_length;

  parallel_for(chains, config.workers, [&](std::size_t c) {
    const std::size_t first = c * chain_length;
    const std::size_t last = std::min(count, first + chain_length);
    Vector x = start;
    for (long s = 0; s < burn_in; ++s) {
      Substream rng(config.master_seed, first, static_cast<std::uint64_t>(s), kBurnTag);
      x = hit_and_run_step(body, x, rng);
    }
    for (std::size_t i = first; i < last; ++i) {
      for (long s = 0; s < thinning; ++s) {
        Substream rng(config.master_seed, i, static_cast<std::uint64_t>(s), kWalkTag);
        x = hit_and_run_step(body, x, rng);
      }
      batch.points.col(static_cast<Eigen::Index>(i)) = x;
    }
  });
  return batch;
}

}  // namespace convexlab::sampling
