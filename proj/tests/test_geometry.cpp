#include <doctest.h>

#include <random>

#include "convexlab/body_spec.hpp"
#include "convexlab/geometry.hpp"
#include "oracles.hpp"

using namespace convexlab;
using geometry::ConvexBody;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

PointSet pts(Eigen::Index n, std::initializer_list<double> coords) {
  const Eigen::Index count = static_cast<Eigen::Index>(coords.size()) / n;
  PointSet P(n, count);
  auto it = coords.begin();
  for (Eigen::Index j = 0; j < count; ++j)
    for (Eigen::Index i = 0; i < n; ++i) P(i, j) = *it++;
  return P;
}

Matrix random_gl(std::mt19937_64& gen, Eigen::Index n) {
  std::normal_distribution<double> g;
  for (;;) {
    Matrix T = Matrix::NullaryExpr(n, n, [&] { return g(gen); });
    if (std::abs(T.determinant()) > 0.1) return T;
  }
}

std::vector<ConvexBody> zoo() {
  return {geometry::h_cube(3, 1.0),
          geometry::cube(3, 0.5),
          geometry::named_body("simplex", 3),
          geometry::named_body("cross", 3),
          geometry::named_body("ball", 3),
          ConvexBody::v_polytope(pts(3, {1, 0, 0, 0, 1, 0, 0, 0, 1, -1, -1, -1, 0.3, 0.2, -0.9})),
          geometry::affine_image(geometry::named_body("ball", 3), Matrix::Identity(3, 3) + Matrix::Constant(3, 3, 0.3),
                                 Vector::Zero(3))};
}

}  // namespace

TEST_CASE("membership on basic shapes") {
  const auto square = geometry::h_cube(2, 1.0);
  CHECK(geometry::membership(square, vec({0.5, 0.5})));
  CHECK_FALSE(geometry::membership(square, vec({1.5, 0.0})));
  const auto tri = ConvexBody::v_polytope(pts(2, {0, 0, 1, 0, 0, 1}));
  CHECK(geometry::membership(tri, vec({0.25, 0.25})));
  CHECK_THROWS_AS(geometry::membership(square, vec({0.0, 0.0, 0.0})), DimensionMismatch);
}

TEST_CASE("construction rejects degenerate bodies") {
  Matrix A(1, 2);
  A << 1, 0;
  CHECK_THROWS_AS(ConvexBody::h_polytope(A, vec({1.0})), InvalidBody);
  CHECK_THROWS_AS(ConvexBody::v_polytope(pts(2, {0, 0, 1, 1, 2, 2})), InvalidBody);
  CHECK_THROWS_AS(ConvexBody::ball(vec({0.0, 0.0}), 0.0), InvalidBody);
  CHECK_THROWS_AS(geometry::affine_image(geometry::h_cube(2, 1.0), Matrix::Zero(2, 2), Vector::Zero(2)),
                  InvalidArgument);
}

TEST_CASE("support function examples") {
  const Direction diag(Vector::Ones(2));
  CHECK(geometry::support(ConvexBody::ball(Vector::Zero(3), 2.0), Direction::axis(3, 1)) ==
        doctest::Approx(2.0));
  CHECK(geometry::support(ConvexBody::v_polytope(pts(2, {0, 0, 2, 0, 0, 2})), diag) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const Direction d3(Vector::Ones(3));
  CHECK(geometry::support(geometry::h_cube(3, 1.0), d3) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("support of the H-cube equals vertex enumeration") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g;
  const auto cube = geometry::h_cube(4, 0.7);
  for (int rep = 0; rep < 50; ++rep) {
    const Vector t = Vector::NullaryExpr(4, [&] { return g(gen); });
    const Direction d(t);
    CHECK(geometry::support(cube, d) == doctest::Approx(oracle::cube_support_by_vertices(d.vec(), 0.7)).epsilon(1e-12));
  }
}

TEST_CASE("gauge examples") {
  CHECK(geometry::gauge(geometry::h_cube(3, 1.0), vec({0.5, 0.5, 0.5})) == doctest::Approx(0.5));
  CHECK(geometry::gauge(ConvexBody::ball(Vector::Zero(4), 1.0), vec({3.0, 0, 0, 0})) == doctest::Approx(3.0));
  const auto diamond = ConvexBody::v_polytope(pts(2, {1, 0, -1, 0, 0, 1, 0, -1}));
  CHECK(geometry::gauge(diamond, vec({0.25, 0.25})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(geometry::gauge_bisection(diamond, vec({0.25, 0.25})) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(geometry::gauge(diamond, vec({0.0, 0.0})) == 0.0);
  const auto off = ConvexBody::ball(vec({2.0, 0.0}), 1.0);
  CHECK_THROWS_AS(geometry::gauge(off, vec({1.0, 0.0})), InvalidArgument);
}

TEST_CASE("gauge of a facetless V-polytope agrees with bisection") {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> g;
  PointSet V = PointSet::NullaryExpr(4, 12, [&] { return g(gen); });
  V.colwise() -= V.rowwise().mean();
  const auto body = ConvexBody::v_polytope(V);
  REQUIRE_FALSE(body.as<geometry::VPolytope>()->facets.has_value());
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = Vector::NullaryExpr(4, [&] { return g(gen); });
    CHECK(geometry::gauge(body, x) == doctest::Approx(geometry::gauge_bisection(body, x)).epsilon(1e-8));
  }
}

TEST_CASE("symmetric hull support") {
  CHECK(geometry::sym_hull_support(ConvexBody::ball(vec({1.0, 0.0}), 1.0), Direction::axis(2, 0, -1.0)) ==
        doctest::Approx(2.0));
  const auto tri = ConvexBody::v_polytope(pts(2, {0, 0, 2, 0, 0, 2}));
  CHECK(geometry::sym_hull_support(tri, Direction::axis(2, 0, -1.0)) == doctest::Approx(2.0));
  const auto cube = geometry::h_cube(2, 1.0);
  const Direction d(vec({0.3, -0.8}));
  CHECK(geometry::sym_hull_support(cube, d) == doctest::Approx(geometry::support(cube, d)));
}

TEST_CASE("affine images") {
  const auto ball = ConvexBody::ball(Vector::Zero(2), 1.0);
  const auto big = geometry::affine_image(ball, 2.0 * Matrix::Identity(2, 2), vec({1.0, -1.0}));
  REQUIRE(big.as<geometry::Ball>());
  CHECK(big.as<geometry::Ball>()->radius == doctest::Approx(2.0));
  CHECK(big.as<geometry::Ball>()->center.isApprox(vec({1.0, -1.0})));

  const auto cube = geometry::h_cube(3, 1.0);
  const auto same = geometry::affine_image(cube, Matrix::Identity(3, 3), Vector::Zero(3));
  const Direction d(vec({0.2, -0.4, 0.9}));
  CHECK(geometry::support(same, d) == doctest::Approx(geometry::support(cube, d)).epsilon(1e-14));

  std::mt19937_64 gen(21);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix T = random_gl(gen, 3);
    const auto image = geometry::affine_image(cube, T, Vector::Zero(3));
    const Vector t = Vector::NullaryExpr(3, [&] { return g(gen); });
    CHECK(geometry::support_vec(image, t) == doctest::Approx(geometry::support_vec(cube, T.transpose() * t)).epsilon(1e-10));
  }
}

TEST_CASE("bounding boxes") {
  const auto [lo, hi] = geometry::bounding_box(ConvexBody::ball(Vector::Zero(3), 1.0));
  CHECK(lo.isApprox(-Vector::Ones(3)));
  CHECK(hi.isApprox(Vector::Ones(3)));
  const auto [slo, shi] = geometry::bounding_box(ConvexBody::v_polytope(pts(2, {0, 0, 1, 0, 0, 1})));
  CHECK(slo.isZero(1e-14));
  CHECK(shi.isApprox(Vector::Ones(2)));
  const auto [clo, chi] = geometry::bounding_box(geometry::h_cube(4, 1.0));
  CHECK(chi.isApprox(Vector::Ones(4), 1e-12));
  CHECK(clo.isApprox(-Vector::Ones(4), 1e-12));
}

TEST_CASE("planar hull matches the gift-wrapping oracle") {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<oracle::P2> p;
    for (int i = 0; i < 40; ++i) p.emplace_back(u(gen), u(gen));
    PointSet P(2, 40);
    for (int i = 0; i < 40; ++i) P.col(i) = p[static_cast<std::size_t>(i)];
    const auto expected = oracle::hull(p);
    const PointSet got = geometry::planar_hull(P);
    REQUIRE(static_cast<std::size_t>(got.cols()) == expected.size());
    for (const auto& e : expected) {
      bool found = false;
      for (Eigen::Index j = 0; j < got.cols(); ++j) found = found || (got.col(j) - e).norm() == 0.0;
      CHECK(found);
    }
  }
}

TEST_CASE("named bodies are centered with unit volume") {
  for (const char* name : {"cube", "simplex", "cross", "ball"}) {
    for (Eigen::Index n = 1; n <= 6; ++n) {
      const auto body = geometry::named_body(name, n);
      REQUIRE(body.known_volume());
      CHECK(*body.known_volume() == doctest::Approx(1.0));
      CHECK(geometry::strictly_interior(body, Vector::Zero(n), 1e-9));
    }
  }
  // simplex vertices: conv{0, e_i} scaled by (n!)^{1/n} has volume 1.
  const auto s2 = geometry::named_body("simplex", 2);
  CHECK(geometry::support(s2, Direction::axis(2, 0)) + geometry::support(s2, Direction::axis(2, 0, -1.0)) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("body specs") {
  using nlohmann::json;
  const auto p = geometry::parse_body(json{{"type", "cube"}, {"dim", 3}});
  CHECK(p.centered);
  CHECK(p.body.dim() == 3);
  const auto h = geometry::parse_body(json::parse(R"({"type":"hpoly","dim":1,"A":[[1],[-1]],"b":[1,2]})"));
  CHECK_FALSE(h.centered);
  CHECK(geometry::support(h.body, Direction::axis(1, 0, -1.0)) == doctest::Approx(2.0));
  const auto shifted = geometry::parse_body(json::parse(R"({"type":"ball","dim":2,"shift":[1,0]})"));
  CHECK_FALSE(shifted.centered);
  CHECK_THROWS_AS(geometry::parse_body(json::parse(R"({"type":"cube","dim":0})")), ConfigError);
  CHECK_THROWS_AS(geometry::parse_body(json::parse(R"({"type":"blob","dim":2})")), ConfigError);
  CHECK_THROWS_AS(geometry::parse_body(json::parse(R"({"type":"vpoly","dim":3,"vertices":[[0,0],[1,0],[0,1]]})")),
                  ConfigError);
}

TEST_CASE("support dominates inner products of member points") {
  std::mt19937_64 gen(13);
  std::normal_distribution<double> g;
  for (const auto& body : zoo()) {
    const Eigen::Index n = body.dim();
    for (int rep = 0; rep < 30; ++rep) {
      const Vector x = Vector::NullaryExpr(n, [&] { return 0.4 * g(gen); });
      if (!geometry::membership(body, x)) continue;
      const Direction d(Vector::NullaryExpr(n, [&] { return g(gen); }));
      CHECK(geometry::support(body, d) >= x.dot(d.vec()) - 1e-12);
    }
  }
}

TEST_CASE("gauge is homogeneous, subadditive, and consistent with membership") {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (const auto& body : zoo()) {
    const Eigen::Index n = body.dim();
    if (!geometry::strictly_interior(body, Vector::Zero(n), 1e-9)) continue;
    for (int rep = 0; rep < 20; ++rep) {
      const Vector x = Vector::NullaryExpr(n, [&] { return g(gen); });
      const Vector y = Vector::NullaryExpr(n, [&] { return g(gen); });
      const double s = u(gen);
      const double px = geometry::gauge(body, x);
      CHECK(geometry::gauge(body, s * x) == doctest::Approx(s * px).epsilon(1e-9));
      CHECK(geometry::gauge(body, x + y) <= px + geometry::gauge(body, y) + 1e-9);
      const Vector z = x / px * (rep % 2 ? 0.98 : 1.02);
      CHECK(geometry::membership(body, z, 1e-9) == (geometry::gauge(body, z) <= 1.0 + 1e-9));
    }
  }
}

TEST_CASE("affine image membership commutes with the map") {
  std::mt19937_64 gen(19);
  std::normal_distribution<double> g;
  for (const auto& body : zoo()) {
    const Eigen::Index n = body.dim();
    const Matrix T = random_gl(gen, n);
    const Vector s = Vector::NullaryExpr(n, [&] { return g(gen); });
    const auto image = geometry::affine_image(body, T, s);
    for (int rep = 0; rep < 20; ++rep) {
      const Vector x = Vector::NullaryExpr(n, [&] { return 0.5 * g(gen); });
      const double p = geometry::gauge(body, x);
      if (std::abs(p - 1.0) < 1e-6) continue;
      CHECK(geometry::membership(image, T * x + s) == geometry::membership(body, x));
    }
  }
}

TEST_CASE("symmetric hull support is even") {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> g;
  for (const auto& body : zoo()) {
    const Direction d(Vector::NullaryExpr(body.dim(), [&] { return g(gen); }));
    CHECK(geometry::sym_hull_support(body, d) == doctest::Approx(geometry::sym_hull_support(body, -d)));
  }
}

TEST_CASE("chords end on the boundary") {
  std::mt19937_64 gen(29);
  std::normal_distribution<double> g;
  for (const auto& body : zoo()) {
    const Eigen::Index n = body.dim();
    const Vector x = body.interior_point();
    for (int rep = 0; rep < 10; ++rep) {
      const Vector u = Direction(Vector::NullaryExpr(n, [&] { return g(gen); })).vec();
      const auto c = geometry::chord(body, x, u);
      CHECK(c.t_minus < 0.0);
      CHECK(c.t_plus > 0.0);
      CHECK(geometry::membership(body, x + c.t_plus * (1 - 1e-9) * u));
      CHECK_FALSE(geometry::membership(body, x + c.t_plus * (1 + 1e-6) * u));
      CHECK(geometry::membership(body, x + c.t_minus * (1 - 1e-9) * u));
      CHECK_FALSE(geometry::membership(body, x + c.t_minus * (1 + 1e-6) * u));
    }
  }
}
