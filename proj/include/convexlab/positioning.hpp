#pragma once

#include <cstdint>
#include <utility>

#include <json.hpp>

#include "convexlab/geometry.hpp"
#include "convexlab/sampling.hpp"

namespace convexlab::positioning {

// { x : (x - center)' shape (x - center) <= 1 }
struct Ellipsoid {
  Vector center;
  Matrix shape;

  Eigen::Index dim() const { return center.size(); }
  double volume() const;
  // (x - c)' M (x - c)
  double mahalanobis(const Vector& x) const;
  bool contains(const Vector& x, double tol = 0.0) const { return mahalanobis(x) <= 1.0 + tol; }
  // Semi-axis lengths, ascending.
  Vector radii() const;
  // The same ellipsoid as a body (image of the unit ball).
  geometry::ConvexBody as_body() const;
  // Uniform point from a standard normal vector g and a uniform u in [0,1).
  Vector map_from_ball(const Vector& unit_ball_point) const;
};

nlohmann::json to_json(const Ellipsoid& e);

struct MveeOptions {
  double eps = 1e-6;
  long max_iterations = 100000;
};

struct MveeResult {
  Ellipsoid ellipsoid;
  Vector weights;  // barycentric weights on the input points
  long iterations = 0;
  double max_residual = 0.0;  // max_i (x_i - c)' S^-1 (x_i - c) / n at exit
  bool converged = false;
};

// Khachiyan barycentric-coordinate ascent with Todd-Yildirim away steps.
// The returned shape is rescaled so that every input point is contained.
MveeResult mvee(const PointSet& points, const MveeOptions& options = {});

struct VectorEstimate {
  Vector value;
  Vector stderr_;
};

VectorEstimate estimate_barycenter(const geometry::ConvexBody& body, std::size_t count,
                                   const sampling::SamplerConfig& config);

struct IsotropicReport {
  Vector barycenter_est;
  Matrix covariance_est;
  Matrix transform;
  double volume_scale = 1.0;  // estimated volume of the input body
  double volume_stderr = 0.0;
  double L_K_est = 0.0;
  double stderr_LK = 0.0;
  std::size_t sample_size = 0;
};

nlohmann::json to_json(const IsotropicReport& r);

// K~ = T (K - bar) with T = s Sigma^{-1/2} and s making the estimated volume one.
std::pair<geometry::ConvexBody, IsotropicReport> isotropize(const geometry::ConvexBody& body,
                                                            std::size_t count,
                                                            const sampling::SamplerConfig& config);

struct ScalarEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Hit-fraction Monte Carlo inside the bounding box.
ScalarEstimate volume_estimate(const geometry::ConvexBody& body, std::size_t count, std::uint64_t seed,
                               int workers = 1);
// Hit-fraction Monte Carlo inside an enclosing ellipsoid.
ScalarEstimate volume_estimate_in(const geometry::ConvexBody& body, const Ellipsoid& envelope,
                                  std::size_t count, std::uint64_t seed, int workers = 1);

// Point set whose MVEE stands in for the body's: the vertices of a
// V-polytope, otherwise support points at 1000 n quasi-uniform directions.
PointSet envelope_points(const geometry::ConvexBody& body, std::uint64_t seed = 0x0e11);

struct OvrEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  Ellipsoid mvee;
  double hit_fraction = 0.0;
};

// (|MVEE| / |K|)^{1/n}. Uses the exact volume of K when it is known.
OvrEstimate ovr_estimate(const geometry::ConvexBody& body, std::size_t count, std::uint64_t seed,
                         int workers = 1);

// conv(K, -K) as a body: K itself when K is symmetric, the hull of the
// mirrored vertex/support set otherwise.
geometry::ConvexBody symmetric_hull(const geometry::ConvexBody& body, std::uint64_t seed = 0x5e11);

}  // namespace convexlab::positioning
