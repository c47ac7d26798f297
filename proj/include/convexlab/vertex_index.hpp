#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexlab/approximation.hpp"
#include "convexlab/geometry.hpp"

namespace convexlab::vertex_index {

// Upper certificate: K inside conv(Y), total = sum of p_K(y_j).
struct ViUpperCertificate {
  PointSet points;
  std::vector<double> gauges;
  double total = 0.0;
  bool containment_checked = false;
  // True when the check was exact (V-polytope K); false when it only
  // covered sampled support directions.
  bool exact_check = false;
};

// K not inside conv(Y): carries the offending vertex or direction.
class ContainmentViolation : public InvalidArgument {
 public:
  ContainmentViolation(const std::string& what, Vector witness)
      : InvalidArgument(what), witness_(std::move(witness)) {}
  const Vector& witness() const { return witness_; }

 private:
  Vector witness_;
};

struct CheckOptions {
  std::size_t directions = 0;  // 0 means 10^4 n, for non-polytope K
  std::uint64_t direction_seed = 0xc4ec;
  lp::NumericPolicy policy = {};
};

// K must be centered. Throws ContainmentViolation when conv(Y) misses K.
ViUpperCertificate vi_upper_from_points(const geometry::ConvexBody& body, const PointSet& Y,
                                        const CheckOptions& options = {});

struct RandomUpperConfig {
  std::uint64_t seed = 0;
  double alpha = 10.0;  // N >= alpha n
  bool mirrored = false;
  int workers = 1;
  std::optional<sampling::Method> method;
  approximation::ContainmentOptions containment = {};
  CheckOptions check = {};
};

struct RandomUpperResult {
  ViUpperCertificate certificate;
  std::size_t best_trial = 0;
  double t_star = 0.0;  // of the winning trial
  std::vector<double> totals;  // per trial; inf for discarded trials
  std::size_t discarded = 0;   // trials with t* = 0
};

// Per trial: x_1..x_N uniform in K, y_j = x_j / t*. Best total wins, ties
// to the lowest trial index; the winner is verified again.
RandomUpperResult vi_upper_random(const geometry::ConvexBody& body, long N, std::size_t trials,
                                  const RandomUpperConfig& config);

struct LowerConfig {
  // Unset: symbolic mode, value = n^{3/2} / ovr.
  std::optional<double> c;
  std::size_t volume_samples = 200000;
  std::uint64_t seed = 0x10e5;
  int workers = 1;
};

struct ViLowerEstimate {
  double value = 0.0;
  double ovr_used = 0.0;
  double ovr_stderr = 0.0;
  std::string constant_mode;  // "symbolic" or "configured"
  double c = 1.0;
};

// c n^{3/2} / ovr(conv(K, -K)).
ViLowerEstimate vi_lower(const geometry::ConvexBody& body, const LowerConfig& config = {});

}  // namespace convexlab::vertex_index
