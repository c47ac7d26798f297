#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/lp.hpp"
#include "convexlab/sampling.hpp"

namespace convexlab::approximation {

// C_N = conv(points), optionally together with the mirrored points -x_i.
struct RandomPolytope {
  PointSet points;

  Eigen::Index dim() const { return points.rows(); }
  Eigen::Index size() const { return points.cols(); }
  RandomPolytope mirrored() const;
};

enum class ContainmentMethod { kExactVPoly, kDirectionBound };
std::string to_string(ContainmentMethod m);

struct ContainmentOptions {
  // Exact for V-polytopes unless forced; other bodies always get the bound.
  bool force_direction_bound = false;
  // Directions for the bound; 0 means 10^4 n.
  std::size_t directions = 0;
  std::uint64_t direction_seed = 0xd1c7;
  lp::NumericPolicy policy = {};
};

struct ContainmentCertificate {
  double t_star = 0.0;
  Vector witness_vertex;  // arg-min vertex (or direction for the bound)
  // Largest t with the segment [0, t v] inside C_N, per vertex. All zero
  // when the origin lies outside C_N.
  std::vector<double> per_vertex_scales;
  ContainmentMethod method = ContainmentMethod::kExactVPoly;
  bool origin_inside = true;
};

// Largest t with t K inside C_N. K must contain the origin in its interior.
ContainmentCertificate containment_factor(const geometry::ConvexBody& body, const RandomPolytope& polytope,
                                          const ContainmentOptions& options = {});

// max(2, beta ln(N/n) / (2 ln C_hat))
double q_select(long N, long n, double beta, double C_hat);

// ln 2 + ln binom(N, n) + (N - n) ln(1 - C_hat^-q)
double log_failure_bound(long N, long n, double q, double C_hat);
// min(1, exp(log_failure_bound)); underflows to 0 quietly.
double failure_bound(long N, long n, double q, double C_hat);

// Support profile of Z_q^+(K) on a fixed direction set, estimated once per
// body and reused by every trial.
struct ZqProfile {
  double q = 2.0;
  std::vector<Direction> directions;
  std::vector<double> support;
};

ZqProfile zq_profile(const sampling::SampleBatch& reference, double q, const std::vector<Direction>& directions,
                     double volume = 1.0);

struct TrialConfig {
  std::uint64_t seed = 0;
  double C_hat = 4.0;
  bool mirror = false;
  std::optional<sampling::Method> method;  // default_method(K) when unset
  ContainmentOptions containment = {};
  const ZqProfile* profile = nullptr;  // zq_ratio is NaN without one
};

struct TrialRecord {
  std::uint64_t seed = 0;
  Eigen::Index n = 0;
  long N = 0;
  std::string body;
  double beta = 0.0;
  double q = 0.0;
  double t_star = 0.0;
  ContainmentMethod method = ContainmentMethod::kExactVPoly;
  double c_required = kInf;  // 1 / t_star
  double zq_ratio = 0.0;     // min over profile directions of h_{C_N} / h_{Z_q^+}
  double elapsed_ms = 0.0;
};

inline constexpr const char* kTrialsHeader = "seed,n,N,body,beta,q,t_star,method,c_required,zq_ratio,elapsed_ms";
// One CSV row without the trailing newline.
std::string csv_row(const TrialRecord& r);

// Samples N points of K, builds C_N and certifies t*. K must be centered.
TrialRecord run_containment_trial(const geometry::ConvexBody& body, long N, double beta,
                                  const TrialConfig& config);

}  // namespace convexlab::approximation
