#include <cmath>
#include <limits>

#include "convexlab/parallel.hpp"
#include "convexlab/positioning.hpp"
#include "convexlab/vertex_index.hpp"

namespace convexlab::vertex_index {

namespace {

// Certificates are built from y = x / t*; the hull is enlarged by this
// factor so that its re-verification does not sit exactly on the LP
// tolerance boundary.
constexpr double kCertificateSlack = 1.0 + 1e-9;

void check_containment(const geometry::ConvexBody& body, const PointSet& Y, const CheckOptions& options,
                       ViUpperCertificate& cert) {
  if (body.as<geometry::VPolytope>()) {
    const PointSet& V = geometry::vertices_of(body);
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
      if (!lp::hull_membership(Y, V.col(j), options.policy).inside) {
        throw ContainmentViolation("vertex " + std::to_string(j) + " of the body lies outside conv(Y)",
                                   V.col(j));
      }
    }
    cert.exact_check = true;
  } else {
    const Eigen::Index n = body.dim();
    const std::size_t count = options.directions ? options.directions : static_cast<std::size_t>(10000 * n);
    for (const auto& d : geometry::quasi_uniform_directions(n, count, options.direction_seed)) {
      const double hk = geometry::support(body, d);
      const double hy = (d.vec().transpose() * Y).maxCoeff();
      if (hk > hy + options.policy.feasibility * (1.0 + std::abs(hk))) {
        throw ContainmentViolation("support of the body exceeds conv(Y) along a sampled direction", d.vec());
      }
    }
    cert.exact_check = false;
  }
  cert.containment_checked = true;
}

}  // namespace

ViUpperCertificate vi_upper_from_points(const geometry::ConvexBody& body, const PointSet& Y,
                                        const CheckOptions& options) {
  if (Y.rows() != body.dim()) throw DimensionMismatch("certificate points do not match the body");
  if (Y.cols() < body.dim() + 1) throw InvalidArgument("conv(Y) cannot be full-dimensional");
  ViUpperCertificate cert;
  cert.points = Y;
  check_containment(body, Y, options, cert);
  cert.gauges.reserve(static_cast<std::size_t>(Y.cols()));
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    cert.gauges.push_back(geometry::gauge(body, Y.col(j)));
    cert.total += cert.gauges.back();
  }
  return cert;
}

RandomUpperResult vi_upper_random(const geometry::ConvexBody& body, long N, std::size_t trials,
                                  const RandomUpperConfig& config) {
  const Eigen::Index n = body.dim();
  if (static_cast<double>(N) < config.alpha * static_cast<double>(n)) {
    throw InvalidArgument("vi_upper_random needs N >= alpha n");
  }
  if (trials < 1) throw InvalidArgument("vi_upper_random needs at least one trial");

  struct Candidate {
    PointSet points;
    double t_star = 0.0;
    double total = kInf;
  };
  std::vector<Candidate> candidates(trials);
  parallel_for(trials, config.workers, [&](std::size_t t) {
    approximation::TrialConfig tc;
    tc.seed = derive_seed(config.seed, t, 0, 0x71);
    sampling::SamplerConfig sc = sampling::default_config(body, tc.seed);
    if (config.method) sc.method = *config.method;
    const auto batch = sampling::sample_uniform(body, static_cast<std::size_t>(N), sc);
    approximation::RandomPolytope poly{batch.points};
    if (config.mirrored) poly = poly.mirrored();
    const auto cert = approximation::containment_factor(body, poly, config.containment);
    Candidate& c = candidates[t];
    c.t_star = cert.t_star;
    if (!(cert.t_star > 0.0)) return;
    const double scale = kCertificateSlack / cert.t_star;
    c.points = poly.points * scale;
    double total = 0.0;
    for (Eigen::Index j = 0; j < poly.points.cols(); ++j) total += geometry::gauge(body, poly.points.col(j));
    c.total = total * scale;
  });

  RandomUpperResult result;
  result.totals.reserve(trials);
  std::size_t best = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    result.totals.push_back(candidates[t].total);
    if (!std::isfinite(candidates[t].total)) {
      ++result.discarded;
      continue;
    }
    if (best == trials || candidates[t].total < candidates[best].total) best = t;
  }
  if (best == trials) throw NumericFailure("every trial gave t* = 0; increase N");
  result.best_trial = best;
  result.t_star = candidates[best].t_star;
  result.certificate = vi_upper_from_points(body, candidates[best].points, config.check);
  return result;
}

ViLowerEstimate vi_lower(const geometry::ConvexBody& body, const LowerConfig& config) {
  const double n = static_cast<double>(body.dim());
  const geometry::ConvexBody sym = positioning::symmetric_hull(body);
  const auto ovr = positioning::ovr_estimate(sym, config.volume_samples, config.seed, config.workers);
  ViLowerEstimate est;
  est.ovr_used = ovr.value;
  est.ovr_stderr = ovr.stderr_;
  est.constant_mode = config.c ? "configured" : "symbolic";
  est.c = config.c.value_or(1.0);
  est.value = est.c * std::pow(n, 1.5) / ovr.value;
  return est;
}

}  // namespace convexlab::vertex_index
