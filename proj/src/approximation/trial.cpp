#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "convexlab/approximation.hpp"
#include "convexlab/centroid.hpp"

namespace convexlab::approximation {

ZqProfile zq_profile(const sampling::SampleBatch& reference, double q, const std::vector<Direction>& directions,
                     double volume) {
  ZqProfile profile;
  profile.q = q;
  profile.directions = directions;
  profile.support.reserve(directions.size());
  for (const auto& d : directions) {
    profile.support.push_back(centroid::h_zq_plus(reference, {q, d, true}, volume).value);
  }
  return profile;
}

std::string csv_row(const TrialRecord& r) {
  using sampling::format_double;
  std::string row = std::to_string(r.seed);
  row += ',' + std::to_string(r.n);
  row += ',' + std::to_string(r.N);
  row += ',' + r.body;
  row += ',' + format_double(r.beta);
  row += ',' + format_double(r.q);
  row += ',' + format_double(r.t_star);
  row += ',' + to_string(r.method);
  row += ',' + format_double(r.c_required);
  row += ',' + format_double(r.zq_ratio);
  row += ',' + format_double(r.elapsed_ms);
  return row;
}

TrialRecord run_containment_trial(const geometry::ConvexBody& body, long N, double beta,
                                  const TrialConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index n = body.dim();
  if (N < 1) throw InvalidArgument("a trial needs at least one point");

  sampling::SamplerConfig sc = sampling::default_config(body, config.seed);
  if (config.method) sc.method = *config.method;
  sc.workers = 1;
  const sampling::SampleBatch batch = sampling::sample_uniform(body, static_cast<std::size_t>(N), sc);

  RandomPolytope polytope{batch.points};
  if (config.mirror) polytope = polytope.mirrored();
  const ContainmentCertificate cert = containment_factor(body, polytope, config.containment);

  TrialRecord rec;
  rec.seed = config.seed;
  rec.n = n;
  rec.N = N;
  rec.body = body.label().empty() ? body.kind() : body.label();
  rec.beta = beta;
  rec.q = q_select(std::max<long>(N, n), n, beta, config.C_hat);
  rec.t_star = cert.t_star;
  rec.method = cert.method;
  rec.c_required = cert.t_star > 0.0 ? 1.0 / cert.t_star : kInf;
  rec.zq_ratio = std::numeric_limits<double>::quiet_NaN();
  if (config.profile) {
    double ratio = kInf;
    const auto& p = *config.profile;
    for (std::size_t i = 0; i < p.directions.size(); ++i) {
      const double hc = (p.directions[i].vec().transpose() * polytope.points).maxCoeff();
      ratio = std::min(ratio, std::max(hc, 0.0) / p.support[i]);
    }
    rec.zq_ratio = ratio;
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace convexlab::approximation
