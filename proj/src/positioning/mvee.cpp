#include <cmath>

#include "convexlab/positioning.hpp"

namespace convexlab::positioning {

double Ellipsoid::volume() const {
  return geometry::unit_ball_volume(dim()) / std::sqrt(shape.determinant());
}

double Ellipsoid::mahalanobis(const Vector& x) const {
  const Vector d = x - center;
  return d.dot(shape * d);
}

Vector Ellipsoid::radii() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(shape);
  Vector r = es.eigenvalues().cwiseInverse().cwiseSqrt();
  std::sort(r.data(), r.data() + r.size());
  return r;
}

namespace {

// Symmetric M^{-1/2}: maps the unit ball onto the ellipsoid (minus center).
Matrix ball_map(const Matrix& shape) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(shape);
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

geometry::ConvexBody Ellipsoid::as_body() const {
  const Eigen::Index n = dim();
  return geometry::affine_image(geometry::ConvexBody::ball(Vector::Zero(n), 1.0), ball_map(shape), center);
}

Vector Ellipsoid::map_from_ball(const Vector& unit_ball_point) const {
  return center + ball_map(shape) * unit_ball_point;
}

nlohmann::json to_json(const Ellipsoid& e) {
  const Eigen::Index n = e.dim();
  std::vector<double> shape;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) shape.push_back(e.shape(i, j));
  }
  return {{"center", std::vector<double>(e.center.data(), e.center.data() + n)}, {"shape", shape}};
}

MveeResult mvee(const PointSet& points, const MveeOptions& options) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (!(options.eps > 0.0 && options.eps <= 0.1)) throw InvalidArgument("mvee eps must lie in (0, 0.1]");
  if (m < n + 1) throw InvalidArgument("mvee: point set is degenerate (fewer than n+1 points)");

  const Eigen::Index d = n + 1;
  Matrix Q(d, m);
  Q.topRows(n) = points;
  Q.row(n).setOnes();

  Vector u = Vector::Constant(m, 1.0 / static_cast<double>(m));
  Matrix Xinv;
  Vector kappa;

  auto recompute = [&] {
    const Matrix X = Q * u.asDiagonal() * Q.transpose();
    Eigen::FullPivLU<Matrix> lu(X);
    if (!lu.isInvertible()) throw InvalidArgument("mvee: point set does not span R^n affinely");
    Xinv = lu.inverse();
    kappa = (Q.array() * (Xinv * Q).array()).colwise().sum().transpose();
  };
  recompute();

  const double target = (1.0 + options.eps) * static_cast<double>(n) + 1.0;
  const double dd = static_cast<double>(d);
  MveeResult result;
  long it = 0;
  for (; it < options.max_iterations; ++it) {
    if (it > 0 && it % 500 == 0) recompute();
    Eigen::Index jp = 0;
    const double kp = kappa.maxCoeff(&jp);
    if (kp <= target) {
      result.converged = true;
      break;
    }
    Eigen::Index jm = -1;
    double km = kInf;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (u[i] > 0.0 && kappa[i] < km) {
        km = kappa[i];
        jm = i;
      }
    }
    const double eps_plus = kp / dd - 1.0;
    const double eps_minus = 1.0 - km / dd;

    Eigen::Index j;
    double tau;
    if (eps_plus >= eps_minus || jm < 0) {
      j = jp;
      tau = (kp - dd) / (dd * (kp - 1.0));
      u *= (1.0 - tau);
      u[j] += tau;
    } else {
      j = jm;
      const double step = std::min((dd - km) / (dd * (km - 1.0)), u[j] / (1.0 - u[j]));
      tau = -step;
      u *= (1.0 + step);
      u[j] -= step;
      if (u[j] < 1e-300) u[j] = 0.0;
    }
    // Sherman-Morrison on X' = (1 - tau) X + tau q q'.
    const Vector w = Xinv * Q.col(j);
    const double denom = (1.0 - tau) + tau * kappa[j];
    Xinv = (Xinv - (tau / denom) * (w * w.transpose())) / (1.0 - tau);
    const Vector proj = Q.transpose() * w;
    kappa = (kappa - (tau / denom) * proj.cwiseAbs2()) / (1.0 - tau);
  }
  if (!result.converged) {
    throw NumericFailure("mvee did not converge within " + std::to_string(options.max_iterations) +
                         " iterations");
  }

  const Vector c = points * u;
  const Matrix centered = points.colwise() - c;
  const Matrix sigma = centered * u.asDiagonal() * centered.transpose();
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw InvalidArgument("mvee: point set is degenerate");
  const Matrix sigma_inv = llt.solve(Matrix::Identity(n, n));
  const Vector dist = (centered.array() * (sigma_inv * centered).array()).colwise().sum().transpose();
  const double scale = dist.maxCoeff();

  result.ellipsoid.center = c;
  result.ellipsoid.shape = sigma_inv / scale;
  result.ellipsoid.shape = 0.5 * (result.ellipsoid.shape + result.ellipsoid.shape.transpose());
  result.weights = u;
  result.iterations = it;
  result.max_residual = scale / static_cast<double>(n);
  return result;
}

}  // namespace convexlab::positioning
