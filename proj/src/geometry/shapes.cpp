#include <algorithm>
#include <cmath>
#include <numeric>

#include "convexlab/geometry.hpp"

namespace convexlab::geometry {

double unit_ball_volume(Eigen::Index n) {
  const double d = static_cast<double>(n);
  return std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d + 1.0));
}

Halfspaces simplex_facets(const PointSet& vertices) {
  const Eigen::Index n = vertices.rows();
  if (vertices.cols() != n + 1) throw InvalidBody("a simplex in R^n has n+1 vertices");
  const Vector v0 = vertices.col(0);
  const Matrix edges = vertices.rightCols(n).colwise() - v0;
  Eigen::FullPivLU<Matrix> lu(edges);
  if (!lu.isInvertible()) throw InvalidBody("simplex vertices are affinely dependent");
  // Barycentric coordinates: lambda_j(x) = (E^-1 (x - v0))_j, lambda_0 = 1 - sum.
  const Matrix R = lu.inverse();
  Halfspaces h;
  h.A.resize(n + 1, n);
  h.b.resize(n + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    h.A.row(j) = -R.row(j);
    h.b[j] = -R.row(j).dot(v0);
  }
  const Vector sum = R.colwise().sum().transpose();
  h.A.row(n) = sum.transpose();
  h.b[n] = 1.0 + sum.dot(v0);
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double norm = h.A.row(i).norm();
    h.A.row(i) /= norm;
    h.b[i] /= norm;
  }
  return h;
}

PointSet planar_hull(const PointSet& points) {
  if (points.rows() != 2) throw DimensionMismatch("planar hull needs points in R^2");
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(points.cols()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return points(0, a) < points(0, b) || (points(0, a) == points(0, b) && points(1, a) < points(1, b));
  });
  auto cross = [&](Eigen::Index o, Eigen::Index a, Eigen::Index b) {
    return (points(0, a) - points(0, o)) * (points(1, b) - points(1, o)) -
           (points(1, a) - points(1, o)) * (points(0, b) - points(0, o));
  };
  // Andrew's monotone chain.
  std::vector<Eigen::Index> hull(2 * idx.size());
  std::size_t k = 0;
  for (auto i : idx) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0.0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const auto i = idx[t];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], i) <= 0.0) --k;
    hull[k++] = i;
  }
  hull.resize(k > 1 ? k - 1 : k);
  PointSet out(2, static_cast<Eigen::Index>(hull.size()));
  for (std::size_t i = 0; i < hull.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = points.col(hull[i]);
  return out;
}

Halfspaces planar_hull_facets(const PointSet& points) {
  Halfspaces h;
  if (points.rows() == 1) {
    h.A = Matrix{{1.0}, {-1.0}};
    h.b = Vector{{points.maxCoeff(), -points.minCoeff()}};
    return h;
  }
  const PointSet hull = planar_hull(points);
  const Eigen::Index m = hull.cols();
  if (m < 3) throw InvalidBody("planar hull is degenerate");
  h.A.resize(m, 2);
  h.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector a = hull.col(i);
    const Vector b = hull.col((i + 1) % m);
    // Counter-clockwise order: the outward normal of edge a->b is (dy, -dx).
    Vector normal{{b[1] - a[1], a[0] - b[0]}};
    normal /= normal.norm();
    h.A.row(i) = normal.transpose();
    h.b[i] = normal.dot(a);
  }
  return h;
}

ConvexBody h_cube(Eigen::Index n, double half) {
  Matrix A(2 * n, n);
  A << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  return ConvexBody::h_polytope(std::move(A), Vector::Constant(2 * n, half))
      .with_known_volume(std::pow(2.0 * half, static_cast<double>(n)));
}

ConvexBody cube(Eigen::Index n, double half) {
  if (n > 20) throw InvalidArgument("cube vertex enumeration is limited to n <= 20");
  const Eigen::Index count = Eigen::Index{1} << n;
  PointSet vertices(n, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) vertices(i, k) = ((k >> i) & 1) ? half : -half;
  }
  Halfspaces facets;
  facets.A.resize(2 * n, n);
  facets.A << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  facets.b = Vector::Constant(2 * n, half);
  return ConvexBody::v_polytope(std::move(vertices), std::move(facets))
      .with_known_volume(std::pow(2.0 * half, static_cast<double>(n)));
}

ConvexBody standard_simplex(Eigen::Index n, double scale) {
  PointSet vertices = PointSet::Zero(n, n + 1);
  vertices.rightCols(n) = scale * Matrix::Identity(n, n);
  return ConvexBody::v_polytope(std::move(vertices))
      .with_known_volume(std::exp(static_cast<double>(n) * std::log(scale) -
                                  std::lgamma(static_cast<double>(n) + 1.0)));
}

ConvexBody cross_polytope(Eigen::Index n, double a) {
  PointSet vertices(n, 2 * n);
  vertices << a * Matrix::Identity(n, n), -a * Matrix::Identity(n, n);
  const double volume = std::exp(static_cast<double>(n) * std::log(2.0 * a) -
                                 std::lgamma(static_cast<double>(n) + 1.0));
  if (n > 12) return ConvexBody::v_polytope(std::move(vertices)).with_known_volume(volume);
  const Eigen::Index count = Eigen::Index{1} << n;
  Halfspaces facets;
  facets.A.resize(count, n);
  facets.b = Vector::Constant(count, a / std::sqrt(static_cast<double>(n)));
  for (Eigen::Index k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) facets.A(k, i) = ((k >> i) & 1) ? -1.0 : 1.0;
  }
  facets.A /= std::sqrt(static_cast<double>(n));
  return ConvexBody::v_polytope(std::move(vertices), std::move(facets)).with_known_volume(volume);
}

ConvexBody named_body(const std::string& name, Eigen::Index n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  const double d = static_cast<double>(n);
  if (name == "cube") return cube(n, 0.5).with_known_volume(1.0).with_label("cube");
  if (name == "simplex") {
    // conv{0, e_i} has volume 1/n!; centre it and scale to volume one.
    const double scale = std::exp(std::lgamma(d + 1.0) / d);
    PointSet vertices = PointSet::Zero(n, n + 1);
    vertices.rightCols(n) = Matrix::Identity(n, n);
    vertices = (vertices.colwise() - Vector::Constant(n, 1.0 / (d + 1.0))) * scale;
    return ConvexBody::v_polytope(std::move(vertices)).with_known_volume(1.0).with_label("simplex");
  }
  if (name == "cross") {
    const double a = 0.5 * std::exp(std::lgamma(d + 1.0) / d);
    return cross_polytope(n, a).with_known_volume(1.0).with_label("cross");
  }
  if (name == "ball") {
    const double r = std::pow(unit_ball_volume(n), -1.0 / d);
    return ConvexBody::ball(Vector::Zero(n), r).with_known_volume(1.0).with_label("ball");
  }
  throw InvalidArgument("unknown named body '" + name + "'");
}

}  // namespace convexlab::geometry
