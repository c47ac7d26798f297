#include <cmath>

#include "convexlab/positioning.hpp"

namespace convexlab::positioning {

namespace {

constexpr std::uint64_t kVolumeSeedTag = 0x701;

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(std::vector<double>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.back()[static_cast<std::size_t>(j)] = m(i, j);
  }
  return rows;
}

}  // namespace

VectorEstimate estimate_barycenter(const geometry::ConvexBody& body, std::size_t count,
                                   const sampling::SamplerConfig& config) {
  if (count < 100) throw InvalidArgument("barycenter estimate needs at least 100 points");
  const sampling::SampleBatch batch = sampling::sample_uniform(body, count, config);
  const double N = static_cast<double>(count);
  VectorEstimate out;
  out.value = batch.points.rowwise().mean();
  const Matrix centered = batch.points.colwise() - out.value;
  out.stderr_ = (centered.array().square().rowwise().sum() / (N - 1.0) / N).sqrt().matrix();
  return out;
}

nlohmann::json to_json(const IsotropicReport& r) {
  const auto n = static_cast<std::size_t>(r.barycenter_est.size());
  return {{"barycenter_est", std::vector<double>(r.barycenter_est.data(), r.barycenter_est.data() + n)},
          {"covariance_est", matrix_json(r.covariance_est)},
          {"transform", matrix_json(r.transform)},
          {"volume_scale", r.volume_scale},
          {"volume_stderr", r.volume_stderr},
          {"L_K_est", r.L_K_est},
          {"stderr_LK", r.stderr_LK},
          {"sample_size", r.sample_size}};
}

std::pair<geometry::ConvexBody, IsotropicReport> isotropize(const geometry::ConvexBody& body,
                                                            std::size_t count,
                                                            const sampling::SamplerConfig& config) {
  const Eigen::Index n = body.dim();
  if (count < static_cast<std::size_t>(1000 * n)) {
    throw InvalidArgument("isotropize needs at least 1000 n sample points");
  }
  const sampling::SampleBatch batch = sampling::sample_uniform(body, count, config);
  const double N = static_cast<double>(count);
  const double dn = static_cast<double>(n);

  IsotropicReport report;
  report.sample_size = count;
  report.barycenter_est = batch.points.rowwise().mean();
  const Matrix centered = batch.points.colwise() - report.barycenter_est;
  report.covariance_est = centered * centered.transpose() / (N - 1.0);

  Eigen::SelfAdjointEigenSolver<Matrix> es(report.covariance_est);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0)) {
    throw NumericFailure("covariance estimate is not positive definite (degenerate body)");
  }

  if (body.known_volume()) {
    report.volume_scale = *body.known_volume();
    report.volume_stderr = 0.0;
  } else {
    const ScalarEstimate vol =
        volume_estimate(body, count, derive_seed(config.master_seed, 0, 0, kVolumeSeedTag), config.workers);
    report.volume_scale = vol.value;
    report.volume_stderr = vol.stderr_;
  }

  const Vector evals = es.eigenvalues();
  const Matrix inv_sqrt = es.eigenvectors() * evals.cwiseInverse().cwiseSqrt().asDiagonal() *
                          es.eigenvectors().transpose();
  const double log_det = evals.array().log().sum();
  // |det(s Sigma^{-1/2})| |K| = 1
  const double s = std::exp((0.5 * log_det - std::log(report.volume_scale)) / dn);
  report.transform = s * inv_sqrt;

  const Matrix post = report.transform * report.covariance_est * report.transform.transpose();
  report.L_K_est = std::sqrt(post.trace() / dn);
  const double rel_vol = report.volume_stderr / report.volume_scale;
  report.stderr_LK = report.L_K_est * std::sqrt(1.0 / (2.0 * dn * N) + rel_vol * rel_vol / (dn * dn));

  geometry::ConvexBody iso =
      geometry::affine_image(body, report.transform, -report.transform * report.barycenter_est);
  iso = iso.with_label(body.label().empty() ? "isotropic" : body.label() + "-iso");
  return {std::move(iso), std::move(report)};
}

}  // namespace convexlab::positioning
