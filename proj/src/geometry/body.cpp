#include <algorithm>
#include <cmath>

#include "convexlab/geometry.hpp"
#include "convexlab/lp.hpp"
#include "convexlab/random.hpp"

namespace convexlab::geometry {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(const ConvexBody& body, Eigen::Index n, const char* what) {
  if (body.dim() != n) {
    throw DimensionMismatch(std::string(what) + ": body in R^" + std::to_string(body.dim()) +
                            ", argument in R^" + std::to_string(n));
  }
}

Vector row_norms(const Matrix& A) { return A.rowwise().norm(); }

bool halfspace_contains(const Halfspaces& h, const Vector& x, double tol) {
  const Vector slack = h.b - h.A * x + tol * row_norms(h.A);
  return (slack.array() >= 0.0).all();
}

lp::LinearProgram free_lp_over(const Halfspaces& h) {
  const Eigen::Index n = h.A.cols();
  lp::LinearProgram prog = lp::LinearProgram::with_variables(n);
  for (Eigen::Index j = 0; j < n; ++j) prog.set_free(j);
  prog.A = h.A;
  prog.rhs = h.b;
  prog.relations.assign(static_cast<std::size_t>(h.A.rows()), lp::Relation::kLessEqual);
  return prog;
}

lp::LpSolution maximize_over(const Halfspaces& h, const Vector& c) {
  lp::LinearProgram prog = free_lp_over(h);
  prog.objective = c;
  return lp::solve(prog);
}

Eigen::Index affine_rank(const PointSet& pts) {
  if (pts.cols() == 0) return 0;
  const Vector mean = pts.rowwise().mean();
  const Matrix centered = pts.colwise() - mean;
  Eigen::FullPivLU<Matrix> lu(centered);
  const double scale = std::max(1.0, centered.cwiseAbs().maxCoeff());
  lu.setThreshold(1e-10 * scale / std::max(1.0, static_cast<double>(pts.cols())));
  return lu.rank();
}

double ball_gauge(const Vector& x, const Vector& c, double r) {
  const double xx = x.squaredNorm();
  if (xx == 0.0) return 0.0;
  const double xc = x.dot(c);
  const double disc = xc * xc - xx * (c.squaredNorm() - r * r);
  return xx / (xc + std::sqrt(std::max(disc, 0.0)));
}

Chord ball_chord(const Vector& x, const Vector& u, const Vector& c, double r) {
  // |x - c + t u|^2 = r^2
  const Vector d = x - c;
  const double a = u.squaredNorm();
  const double b = d.dot(u);
  const double cc = d.squaredNorm() - r * r;
  const double disc = std::max(b * b - a * cc, 0.0);
  const double root = std::sqrt(disc);
  // Numerically stable pair of roots.
  const double q = -(b + std::copysign(root, b));
  double t1 = q / a;
  double t2 = (q != 0.0) ? cc / q : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

Chord halfspace_chord(const Halfspaces& h, const Vector& x, const Vector& u) {
  Chord c{-kInf, kInf};
  const Vector slack = h.b - h.A * x;
  const Vector rate = h.A * u;
  for (Eigen::Index i = 0; i < rate.size(); ++i) {
    if (rate[i] > 0.0) {
      c.t_plus = std::min(c.t_plus, slack[i] / rate[i]);
    } else if (rate[i] < 0.0) {
      c.t_minus = std::max(c.t_minus, slack[i] / rate[i]);
    }
  }
  return c;
}

double halfspace_gauge(const Halfspaces& h, const Vector& x) {
  double g = 0.0;
  const Vector ax = h.A * x;
  for (Eigen::Index i = 0; i < ax.size(); ++i) g = std::max(g, ax[i] / h.b[i]);
  return g;
}

Halfspaces map_halfspaces(const Halfspaces& h, const Matrix& map_inv, const Vector& shift) {
  Halfspaces out;
  out.A = h.A * map_inv;
  out.b = h.b + out.A * shift;
  return out;
}

}  // namespace

// --- construction ------------------------------------------------------------

ConvexBody ConvexBody::h_polytope(Matrix A, Vector b) {
  const Eigen::Index n = A.cols();
  if (n == 0) throw InvalidBody("H-polytope needs positive dimension");
  if (A.rows() != b.size()) throw DimensionMismatch("A has " + std::to_string(A.rows()) +
                                                    " rows but b has " + std::to_string(b.size()));
  const Vector norms = row_norms(A);
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (!(norms[i] > 0.0)) throw InvalidBody("row " + std::to_string(i) + " of A is zero");
  }
  Halfspaces h{std::move(A), std::move(b)};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (double sign : {1.0, -1.0}) {
      const lp::LpSolution s = maximize_over(h, sign * Vector::Unit(n, j));
      if (s.status == lp::Status::kUnbounded) throw InvalidBody("H-polytope is unbounded");
      if (s.status == lp::Status::kInfeasible) throw InvalidBody("H-polytope is empty");
      if (!s.optimal()) throw NumericFailure("LP failure while validating H-polytope");
    }
  }
  // Chebyshev center: max r s.t. a_i x + |a_i| r <= b_i.
  lp::LinearProgram prog = lp::LinearProgram::with_variables(n + 1);
  for (Eigen::Index j = 0; j < n; ++j) prog.set_free(j);
  prog.objective[n] = 1.0;
  prog.A.resize(h.A.rows(), n + 1);
  prog.A.leftCols(n) = h.A;
  prog.A.col(n) = norms;
  prog.rhs = h.b;
  prog.relations.assign(static_cast<std::size_t>(h.A.rows()), lp::Relation::kLessEqual);
  const lp::LpSolution cheb = lp::solve(prog);
  if (!cheb.optimal()) throw NumericFailure("Chebyshev center LP failed");
  const double radius = cheb.x[n];
  if (!(radius > 1e-12)) throw InvalidBody("H-polytope has empty interior");
  HPolytope poly{std::move(h), cheb.x.head(n), radius};
  return ConvexBody(std::move(poly), n);
}

ConvexBody ConvexBody::v_polytope(PointSet vertices) {
  const Eigen::Index n = vertices.rows();
  if (n == 0) throw InvalidBody("V-polytope needs positive dimension");
  if (vertices.cols() < n + 1) throw InvalidBody("V-polytope needs at least n+1 points");
  if (affine_rank(vertices) != n) throw InvalidBody("vertices do not span R^n affinely");
  std::optional<Halfspaces> facets;
  if (n <= 2) {
    facets = planar_hull_facets(vertices);
  } else if (vertices.cols() == n + 1) {
    facets = simplex_facets(vertices);
  }
  return ConvexBody(VPolytope{std::move(vertices), std::move(facets)}, n);
}

ConvexBody ConvexBody::v_polytope(PointSet vertices, Halfspaces facets) {
  const Eigen::Index n = vertices.rows();
  if (n == 0) throw InvalidBody("V-polytope needs positive dimension");
  if (affine_rank(vertices) != n) throw InvalidBody("vertices do not span R^n affinely");
  if (facets.A.cols() != n || facets.A.rows() != facets.b.size()) {
    throw DimensionMismatch("facet description does not match vertex dimension");
  }
  return ConvexBody(VPolytope{std::move(vertices), std::move(facets)}, n);
}

ConvexBody ConvexBody::ball(Vector center, double radius) {
  const Eigen::Index n = center.size();
  if (n == 0) throw InvalidBody("ball needs positive dimension");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidBody("ball radius must be positive");
  return ConvexBody(Ball{std::move(center), radius}, n);
}

std::string ConvexBody::kind() const {
  return std::visit(overloaded{[](const HPolytope&) { return std::string("hpoly"); },
                               [](const VPolytope&) { return std::string("vpoly"); },
                               [](const Ball&) { return std::string("ball"); },
                               [](const AffineImage&) { return std::string("affine"); }},
                    rep_);
}

ConvexBody ConvexBody::with_known_volume(double volume) const {
  ConvexBody out = *this;
  out.known_volume_ = volume;
  return out;
}

ConvexBody ConvexBody::with_label(std::string label) const {
  ConvexBody out = *this;
  out.label_ = std::move(label);
  return out;
}

Vector ConvexBody::interior_point() const {
  return std::visit(
      overloaded{[](const HPolytope& h) -> Vector { return h.chebyshev_center; },
                 [](const VPolytope& v) -> Vector { return v.vertices.rowwise().mean(); },
                 [](const Ball& b) -> Vector { return b.center; },
                 [](const AffineImage& a) -> Vector {
                   return a.map * a.inner->interior_point() + a.shift;
                 }},
      rep_);
}

ConvexBody affine_image(const ConvexBody& body, const Matrix& map, const Vector& shift) {
  const Eigen::Index n = body.dim();
  if (map.rows() != n || map.cols() != n || shift.size() != n) {
    throw DimensionMismatch("affine map must be n x n with an n-vector shift");
  }
  const Eigen::JacobiSVD<Matrix> svd(map);
  const Vector sv = svd.singularValues();
  if (!(sv[n - 1] > 1e-12 * sv[0])) {
    throw InvalidArgument("affine map is singular");
  }
  const Eigen::FullPivLU<Matrix> lu(map);
  const Matrix inv = lu.inverse();
  const double det = lu.determinant();

  std::optional<double> volume;
  if (body.known_volume()) volume = *body.known_volume() * std::abs(det);

  ConvexBody out = std::visit(
      overloaded{
          [&](const HPolytope& h) {
            HPolytope mapped;
            mapped.facets = map_halfspaces(h.facets, inv, shift);
            mapped.chebyshev_center = map * h.chebyshev_center + shift;
            // Radius of a ball inside the image: shrink by the smallest
            // singular value.
            mapped.chebyshev_radius = h.chebyshev_radius * sv[n - 1];
            return ConvexBody(std::move(mapped), n);
          },
          [&](const VPolytope& v) {
            VPolytope mapped;
            mapped.vertices = (map * v.vertices).colwise() + shift;
            if (v.facets) mapped.facets = map_halfspaces(*v.facets, inv, shift);
            return ConvexBody(std::move(mapped), n);
          },
          [&](const Ball& b) {
            // Similarity maps keep the ball variant.
            const Matrix gram = map.transpose() * map;
            const double s2 = gram.trace() / static_cast<double>(n);
            if ((gram - s2 * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12 * s2) {
              return ConvexBody(Ball{map * b.center + shift, std::sqrt(s2) * b.radius}, n);
            }
            return ConvexBody(AffineImage{std::make_shared<const ConvexBody>(body), map, inv, shift},
                              n);
          },
          [&](const AffineImage& a) {
            const Matrix composed = map * a.map;
            return ConvexBody(AffineImage{a.inner, composed, a.map_inverse * inv,
                                          map * a.shift + shift},
                              n);
          }},
      body.rep());
  out.known_volume_ = volume;
  out.label_ = body.label();
  return out;
}

ConvexBody translate(const ConvexBody& body, const Vector& shift) {
  return affine_image(body, Matrix::Identity(body.dim(), body.dim()), shift);
}

// --- queries -------------------------------------------------------------------

bool membership(const ConvexBody& body, const Vector& x, double tol) {
  require_dim(body, x.size(), "membership");
  return std::visit(
      overloaded{[&](const HPolytope& h) { return halfspace_contains(h.facets, x, tol); },
                 [&](const VPolytope& v) {
                   if (v.facets) return halfspace_contains(*v.facets, x, tol);
                   lp::NumericPolicy policy;
                   policy.feasibility = std::max(policy.feasibility, tol);
                   return lp::hull_membership(v.vertices, x, policy).inside;
                 },
                 [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
                 [&](const AffineImage& a) {
                   return membership(*a.inner, a.map_inverse * (x - a.shift), tol);
                 }},
      body.rep());
}

bool strictly_interior(const ConvexBody& body, const Vector& x, double delta) {
  require_dim(body, x.size(), "strictly_interior");
  return std::visit(
      overloaded{[&](const HPolytope& h) { return halfspace_contains(h.facets, x, -delta); },
                 [&](const VPolytope& v) {
                   if (v.facets) return halfspace_contains(*v.facets, x, -delta);
                   if (!lp::hull_membership(v.vertices, x).inside) return false;
                   const PointSet shifted = v.vertices.colwise() - x;
                   for (Eigen::Index j = 0; j < x.size(); ++j) {
                     for (double s : {1.0, -1.0}) {
                       const Vector e = s * Vector::Unit(x.size(), j);
                       if (lp::max_scale_in_hull(shifted, e) <= delta) return false;
                     }
                   }
                   return true;
                 },
                 [&](const Ball& b) { return (x - b.center).norm() < b.radius - delta; },
                 [&](const AffineImage& a) {
                   return strictly_interior(*a.inner, a.map_inverse * (x - a.shift), delta);
                 }},
      body.rep());
}

double support_vec(const ConvexBody& body, const Vector& v) {
  require_dim(body, v.size(), "support");
  return std::visit(
      overloaded{[&](const HPolytope& h) {
                   const lp::LpSolution s = maximize_over(h.facets, v);
                   if (!s.optimal()) {
                     throw NumericFailure("support LP failed (" + lp::to_string(s.status) +
                                          "): corrupt H-polytope");
                   }
                   return s.objective_value;
                 },
                 [&](const VPolytope& p) { return (v.transpose() * p.vertices).maxCoeff(); },
                 [&](const Ball& b) { return b.center.dot(v) + b.radius * v.norm(); },
                 [&](const AffineImage& a) {
                   return support_vec(*a.inner, a.map.transpose() * v) + a.shift.dot(v);
                 }},
      body.rep());
}

double support(const ConvexBody& body, const Direction& theta) {
  return support_vec(body, theta.vec());
}

namespace {

Vector support_point_vec(const ConvexBody& body, const Vector& v) {
  return std::visit(
      overloaded{[&](const HPolytope& h) -> Vector {
                   const lp::LpSolution s = maximize_over(h.facets, v);
                   if (!s.optimal()) throw NumericFailure("support point LP failed");
                   return s.x;
                 },
                 [&](const VPolytope& p) -> Vector {
                   Eigen::Index best = 0;
                   (v.transpose() * p.vertices).maxCoeff(&best);
                   return p.vertices.col(best);
                 },
                 [&](const Ball& b) -> Vector {
                   const double norm = v.norm();
                   return norm > 0.0 ? Vector(b.center + b.radius * v / norm) : b.center;
                 },
                 [&](const AffineImage& a) -> Vector {
                   return a.map * support_point_vec(*a.inner, a.map.transpose() * v) + a.shift;
                 }},
      body.rep());
}

// Gauge of (inner + offset) at x.
double translated_gauge(const ConvexBody& inner, const Vector& offset, const Vector& x) {
  if (const Ball* b = inner.as<Ball>()) return ball_gauge(x, b->center + offset, b->radius);
  return gauge_bisection(translate(inner, offset), x);
}

}  // namespace

Vector support_point(const ConvexBody& body, const Direction& theta) {
  require_dim(body, theta.dim(), "support_point");
  return support_point_vec(body, theta.vec());
}

double gauge(const ConvexBody& body, const Vector& x) {
  require_dim(body, x.size(), "gauge");
  const Vector origin = Vector::Zero(body.dim());
  if (!strictly_interior(body, origin, 1e-9)) {
    throw InvalidArgument("gauge requires the origin in the interior of the body");
  }
  if (x.isZero(0.0)) return 0.0;
  return std::visit(
      overloaded{[&](const HPolytope& h) { return halfspace_gauge(h.facets, x); },
                 [&](const VPolytope& v) {
                   if (v.facets) return halfspace_gauge(*v.facets, x);
                   const double t = lp::max_scale_in_hull(v.vertices, x);
                   return t > 0.0 ? 1.0 / t : kInf;
                 },
                 [&](const Ball& b) { return ball_gauge(x, b.center, b.radius); },
                 [&](const AffineImage& a) {
                   // x in t(T K + s)  <=>  T^-1 x in t(K + T^-1 s)
                   return translated_gauge(*a.inner, a.map_inverse * a.shift, a.map_inverse * x);
                 }},
      body.rep());
}

double gauge_bisection(const ConvexBody& body, const Vector& x) {
  require_dim(body, x.size(), "gauge");
  if (x.isZero(0.0)) return 0.0;
  constexpr int kMaxSteps = 200;
  double hi = 1.0;
  int steps = 0;
  while (!membership(body, x / hi) && steps++ < kMaxSteps) hi *= 2.0;
  double lo = hi / 2.0;
  steps = 0;
  while (membership(body, x / lo) && steps++ < kMaxSteps) {
    hi = lo;
    lo /= 2.0;
  }
  for (int i = 0; i < kMaxSteps && hi - lo > 1e-10 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (membership(body, x / mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double sym_hull_support(const ConvexBody& body, const Direction& theta) {
  return std::max(support(body, theta), support(body, -theta));
}

std::pair<Vector, Vector> bounding_box(const ConvexBody& body) {
  const Eigen::Index n = body.dim();
  Vector lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(n, i);
    hi[i] = support_vec(body, e);
    lo[i] = -support_vec(body, -e);
  }
  return {lo, hi};
}

Chord chord(const ConvexBody& body, const Vector& x, const Vector& u) {
  require_dim(body, x.size(), "chord");
  return std::visit(
      overloaded{[&](const HPolytope& h) { return halfspace_chord(h.facets, x, u); },
                 [&](const VPolytope& v) {
                   if (v.facets) return halfspace_chord(*v.facets, x, u);
                   const PointSet shifted = v.vertices.colwise() - x;
                   return Chord{-lp::max_scale_in_hull(shifted, -u),
                                lp::max_scale_in_hull(shifted, u)};
                 },
                 [&](const Ball& b) { return ball_chord(x, u, b.center, b.radius); },
                 [&](const AffineImage& a) {
                   return chord(*a.inner, a.map_inverse * (x - a.shift), a.map_inverse * u);
                 }},
      body.rep());
}

std::vector<Direction> quasi_uniform_directions(Eigen::Index n, std::size_t count,
                                                std::uint64_t seed) {
  std::vector<Direction> dirs;
  dirs.reserve(count);
  if (n == 1) {
    for (std::size_t k = 0; k < count; ++k) dirs.push_back(Direction::axis(1, 0, k % 2 ? -1.0 : 1.0));
    return dirs;
  }
  if (n == 2) {
    const double offset = Substream(seed).uniform() * 2.0 * M_PI / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double a = offset + 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
      dirs.emplace_back(Vector{{std::cos(a), std::sin(a)}});
    }
    return dirs;
  }
  for (std::size_t k = 0; k < count; ++k) {
    Substream rng(seed, k, 0, 0xd1);
    dirs.push_back(rng.direction(n));
  }
  return dirs;
}

double circumradius(const ConvexBody& body, const std::vector<Direction>& dirs) {
  if (const VPolytope* v = body.as<VPolytope>()) return v->vertices.colwise().norm().maxCoeff();
  if (const Ball* b = body.as<Ball>()) return b->center.norm() + b->radius;
  double r = 0.0;
  for (const auto& d : dirs) r = std::max(r, support(body, d));
  return r;
}

double inradius_estimate(const ConvexBody& body, const std::vector<Direction>& dirs) {
  double r = kInf;
  for (const auto& d : dirs) r = std::min(r, support(body, d));
  return r;
}

const PointSet& vertices_of(const ConvexBody& body) {
  if (const VPolytope* v = body.as<VPolytope>()) return v->vertices;
  throw InvalidArgument("body is not a V-polytope (kind " + body.kind() + ")");
}

}  // namespace convexlab::geometry
