#include <algorithm>

#include "convexlab/approximation.hpp"

namespace convexlab::approximation {

RandomPolytope RandomPolytope::mirrored() const {
  RandomPolytope out;
  out.points.resize(points.rows(), 2 * points.cols());
  out.points << points, -points;
  return out;
}

std::string to_string(ContainmentMethod m) {
  return m == ContainmentMethod::kExactVPoly ? "exact_vpoly" : "direction_bound";
}

namespace {

ContainmentCertificate exact_vpoly(const PointSet& vertices, const PointSet& points,
                                   const lp::NumericPolicy& policy) {
  ContainmentCertificate cert;
  cert.method = ContainmentMethod::kExactVPoly;
  cert.per_vertex_scales.assign(static_cast<std::size_t>(vertices.cols()), 0.0);
  cert.witness_vertex = vertices.col(0);

  // t K inside C_N for some t > 0 needs the origin in C_N; past that, the
  // set of feasible scales along each vertex is an interval starting at 0.
  cert.origin_inside = lp::hull_membership(points, Vector::Zero(points.rows()), policy).inside;
  if (!cert.origin_inside) return cert;

  double best = kInf;
  for (Eigen::Index j = 0; j < vertices.cols(); ++j) {
    const double s = lp::max_scale_in_hull(points, vertices.col(j), policy);
    cert.per_vertex_scales[static_cast<std::size_t>(j)] = s;
    if (s < best) {
      best = s;
      cert.witness_vertex = vertices.col(j);
    }
  }
  cert.t_star = best;
  return cert;
}

ContainmentCertificate direction_bound(const geometry::ConvexBody& body, const PointSet& points,
                                       const ContainmentOptions& options) {
  const Eigen::Index n = body.dim();
  const std::size_t count = options.directions ? options.directions : static_cast<std::size_t>(10000 * n);
  const auto dirs = geometry::quasi_uniform_directions(n, count, options.direction_seed);
  ContainmentCertificate cert;
  cert.method = ContainmentMethod::kDirectionBound;
  cert.origin_inside = lp::hull_membership(points, Vector::Zero(n), options.policy).inside;
  double best = kInf;
  for (const auto& d : dirs) {
    const double hc = (d.vec().transpose() * points).maxCoeff();
    const double ratio = std::max(hc, 0.0) / geometry::support(body, d);
    if (ratio < best) {
      best = ratio;
      cert.witness_vertex = d.vec();
    }
  }
  cert.t_star = cert.origin_inside ? best : 0.0;
  return cert;
}

}  // namespace

ContainmentCertificate containment_factor(const geometry::ConvexBody& body, const RandomPolytope& polytope,
                                          const ContainmentOptions& options) {
  if (polytope.dim() != body.dim()) throw DimensionMismatch("random polytope does not match the body");
  if (polytope.size() == 0) throw InvalidArgument("random polytope has no points");
  if (!geometry::membership(body, Vector::Zero(body.dim()))) {
    throw InvalidArgument("containment factor needs the origin inside the body");
  }
  if (body.as<geometry::VPolytope>() && !options.force_direction_bound) {
    return exact_vpoly(geometry::vertices_of(body), polytope.points, options.policy);
  }
  return direction_bound(body, polytope.points, options);
}

}  // namespace convexlab::approximation
