#include <cmath>
#include <vector>

#include "convexlab/parallel.hpp"
#include "convexlab/positioning.hpp"
#include "convexlab/random.hpp"

namespace convexlab::positioning {

namespace {

constexpr std::uint64_t kBoxTag = 0xB0C5;
constexpr std::uint64_t kEllipsoidTag = 0xE111;

template <typename Draw>
double hit_fraction(const geometry::ConvexBody& body, std::size_t count, std::uint64_t seed,
                    std::uint64_t tag, int workers, Draw&& draw) {
  if (count == 0) throw InvalidArgument("volume estimate needs a positive sample size");
  std::vector<unsigned char> hit(count, 0);
  parallel_for(count, workers, [&](std::size_t i) {
    Substream rng(seed, i, 0, tag);
    hit[i] = geometry::membership(body, draw(rng)) ? 1 : 0;
  });
  std::size_t hits = 0;
  for (auto h : hit) hits += h;
  return static_cast<double>(hits) / static_cast<double>(count);
}

}  // namespace

ScalarEstimate volume_estimate(const geometry::ConvexBody& body, std::size_t count, std::uint64_t seed,
                               int workers) {
  const auto [lo, hi] = geometry::bounding_box(body);
  const double box = (hi - lo).prod();
  const Eigen::Index n = body.dim();
  const double p = hit_fraction(body, count, seed, kBoxTag, workers, [&](Substream& rng) {
    Vector x(n);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = rng.uniform(lo[k], hi[k]);
    return x;
  });
  if (p == 0.0) throw NumericFailure("volume estimate: no hits in the bounding box");
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(count))};
}

ScalarEstimate volume_estimate_in(const geometry::ConvexBody& body, const Ellipsoid& envelope,
                                  std::size_t count, std::uint64_t seed, int workers) {
  const Eigen::Index n = body.dim();
  if (envelope.dim() != n) throw DimensionMismatch("envelope ellipsoid dimension");
  Eigen::SelfAdjointEigenSolver<Matrix> es(envelope.shape);
  const Matrix map = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                     es.eigenvectors().transpose();
  const double p = hit_fraction(body, count, seed, kEllipsoidTag, workers, [&](Substream& rng) {
    const Vector g = rng.direction(n).vec();
    const double r = std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    return Vector(envelope.center + map * (r * g));
  });
  if (p == 0.0) throw NumericFailure("volume estimate: no hits in the envelope");
  const double vol = envelope.volume();
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / static_cast<double>(count))};
}

PointSet envelope_points(const geometry::ConvexBody& body, std::uint64_t seed) {
  if (const auto* v = body.as<geometry::VPolytope>()) return v->vertices;
  const Eigen::Index n = body.dim();
  const auto dirs = geometry::quasi_uniform_directions(n, static_cast<std::size_t>(1000 * n), seed);
  PointSet pts(n, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    pts.col(static_cast<Eigen::Index>(i)) = geometry::support_point(body, dirs[i]);
  }
  return pts;
}

OvrEstimate ovr_estimate(const geometry::ConvexBody& body, std::size_t count, std::uint64_t seed,
                         int workers) {
  const Eigen::Index n = body.dim();
  OvrEstimate out;
  out.mvee = mvee(envelope_points(body, seed)).ellipsoid;
  const ScalarEstimate vol = body.known_volume() ? ScalarEstimate{*body.known_volume(), 0.0}
                                                 : volume_estimate_in(body, out.mvee, count, seed, workers);
  out.hit_fraction = vol.value / out.mvee.volume();
  const double dn = static_cast<double>(n);
  out.value = std::pow(out.hit_fraction, -1.0 / dn);
  const double se_fraction = vol.stderr_ / out.mvee.volume();
  out.stderr_ = out.value / (dn * out.hit_fraction) * se_fraction;
  return out;
}

geometry::ConvexBody symmetric_hull(const geometry::ConvexBody& body, std::uint64_t seed) {
  const Eigen::Index n = body.dim();
  if (const auto* v = body.as<geometry::VPolytope>()) {
    const PointSet& V = v->vertices;
    bool symmetric = true;
    for (Eigen::Index i = 0; i < V.cols() && symmetric; ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < V.cols() && !found; ++j) {
        found = (V.col(i) + V.col(j)).norm() <= 1e-12 * (1.0 + V.col(i).norm());
      }
      symmetric = found;
    }
    if (symmetric) return body;
    PointSet both(n, 2 * V.cols());
    both << V, -V;
    return geometry::ConvexBody::v_polytope(std::move(both)).with_label(body.label() + "-sym");
  }
  const auto probe = geometry::quasi_uniform_directions(n, 64, seed);
  bool symmetric = true;
  for (const auto& d : probe) {
    const double a = geometry::support(body, d);
    const double b = geometry::support(body, -d);
    if (std::abs(a - b) > 1e-9 * (1.0 + std::abs(a))) {
      symmetric = false;
      break;
    }
  }
  if (symmetric) return body;
  const PointSet pts = envelope_points(body, seed);
  PointSet both(n, 2 * pts.cols());
  both << pts, -pts;
  return geometry::ConvexBody::v_polytope(std::move(both)).with_label(body.label() + "-sym");
}

}  // namespace convexlab::positioning
