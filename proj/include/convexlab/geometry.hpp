#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "convexlab/types.hpp"

namespace convexlab::geometry {

// { x : A x <= b }
struct Halfspaces {
  Matrix A;
  Vector b;
};

struct HPolytope {
  Halfspaces facets;
  Vector chebyshev_center;
  double chebyshev_radius = 0.0;
};

struct VPolytope {
  PointSet vertices;  // columns; may include non-extreme points
  // Facet description when one is known exactly (simplices, boxes,
  // cross-polytopes, planar hulls, and affine images of those).
  std::optional<Halfspaces> facets;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

class ConvexBody;

// { map * y + shift : y in inner }
struct AffineImage {
  std::shared_ptr<const ConvexBody> inner;
  Matrix map;
  Matrix map_inverse;
  Vector shift;
};

// Immutable convex body with nonempty interior. All queries are const and
// safe to call concurrently.
class ConvexBody {
 public:
  using Representation = std::variant<HPolytope, VPolytope, Ball, AffineImage>;

  // Validates boundedness and full dimension with LPs.
  static ConvexBody h_polytope(Matrix A, Vector b);
  // Validates full affine rank. Facets are derived for simplices and for
  // dimensions <= 2.
  static ConvexBody v_polytope(PointSet vertices);
  // Trusted facet description; only the vertex rank is checked.
  static ConvexBody v_polytope(PointSet vertices, Halfspaces facets);
  static ConvexBody ball(Vector center, double radius);

  Eigen::Index dim() const { return dim_; }
  const Representation& rep() const { return rep_; }
  std::string kind() const;

  template <typename T>
  const T* as() const { return std::get_if<T>(&rep_); }

  // Exact volume when it is known analytically (named shapes and their
  // affine images).
  const std::optional<double>& known_volume() const { return known_volume_; }
  ConvexBody with_known_volume(double volume) const;

  const std::string& label() const { return label_; }
  ConvexBody with_label(std::string label) const;

  // A point in the interior: Chebyshev center, vertex average, or center.
  Vector interior_point() const;

 private:
  ConvexBody(Representation rep, Eigen::Index dim)
      : rep_(std::move(rep)), dim_(dim) {}

  friend ConvexBody affine_image(const ConvexBody&, const Matrix&, const Vector&);

  Representation rep_;
  Eigen::Index dim_ = 0;
  std::optional<double> known_volume_;
  std::string label_;
};

// x in body, each defining constraint inflated by tol (scaled by row norm).
bool membership(const ConvexBody& body, const Vector& x, double tol = 0.0);

// x in body with margin delta in every constraint.
bool strictly_interior(const ConvexBody& body, const Vector& x, double delta);

// h_body(theta) = max <x, theta> over the body.
double support(const ConvexBody& body, const Direction& theta);
// Same for an arbitrary (not necessarily unit) vector.
double support_vec(const ConvexBody& body, const Vector& v);
// A maximizer of <x, theta>.
Vector support_point(const ConvexBody& body, const Direction& theta);

// Minkowski functional p_K(x) = inf { t > 0 : x in t K }. Requires the
// origin in the interior.
double gauge(const ConvexBody& body, const Vector& x);
// Generic bisection on membership; relative tolerance 1e-10, 200 steps.
double gauge_bisection(const ConvexBody& body, const Vector& x);

// Support function of conv(K, -K).
double sym_hull_support(const ConvexBody& body, const Direction& theta);

ConvexBody affine_image(const ConvexBody& body, const Matrix& map, const Vector& shift);
ConvexBody translate(const ConvexBody& body, const Vector& shift);

std::pair<Vector, Vector> bounding_box(const ConvexBody& body);

// Parameter interval {t : x + t u in body} for interior x.
struct Chord {
  double t_minus = 0.0;
  double t_plus = 0.0;
  double length() const { return t_plus - t_minus; }
};
Chord chord(const ConvexBody& body, const Vector& x, const Vector& u);

// Deterministic, roughly uniform unit directions. Evenly spaced angles in
// the plane, seeded Gaussian directions otherwise.
std::vector<Direction> quasi_uniform_directions(Eigen::Index n, std::size_t count,
                                                std::uint64_t seed = 0x9e3779b9);

// Exact for V-polytopes and balls; a support-sampled lower estimate else.
double circumradius(const ConvexBody& body, const std::vector<Direction>& dirs);
// min over dirs of h(theta): an upper estimate of the inradius about 0.
double inradius_estimate(const ConvexBody& body, const std::vector<Direction>& dirs);

// The extreme vertex set of a V-polytope (or the vertices of the mapped
// V-polytope); throws for other representations.
const PointSet& vertices_of(const ConvexBody& body);

// Facets of a simplex given by n+1 affinely independent points.
Halfspaces simplex_facets(const PointSet& vertices);
// Facets of conv(points) in R^1 or R^2.
Halfspaces planar_hull_facets(const PointSet& points);
// Extreme points of a planar point set in counter-clockwise order.
PointSet planar_hull(const PointSet& points);

// --- standard shapes ------------------------------------------------------

// [-half, half]^n as an H-polytope.
ConvexBody h_cube(Eigen::Index n, double half);
// [-half, half]^n as a V-polytope with its facets.
ConvexBody cube(Eigen::Index n, double half);
// conv{0, e_1, ..., e_n} scaled by `scale`.
ConvexBody standard_simplex(Eigen::Index n, double scale = 1.0);
// conv{+-a e_i}
ConvexBody cross_polytope(Eigen::Index n, double a);

// Centered, volume-one instances: "cube", "simplex", "cross", "ball".
ConvexBody named_body(const std::string& name, Eigen::Index n);

// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(Eigen::Index n);

}  // namespace convexlab::geometry
