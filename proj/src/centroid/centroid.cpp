#include <algorithm>
#include <cmath>

#include "convexlab/centroid.hpp"
#include "moments.hpp"

namespace convexlab::centroid {

PowerMoment power_moment(std::vector<double> base, double q) {
  std::sort(base.begin(), base.end());
  PowerMoment out;
  const double N = static_cast<double>(base.size());
  if (base.empty() || !(base.back() > 0.0)) return out;
  const double log_max = q * std::log(base.back());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double a : base) {
    if (a <= 0.0) continue;
    ++out.positive;
    const double w = std::exp(q * std::log(a) - log_max);
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / N;
  out.log_mean = log_max + std::log(mean);
  if (base.size() > 1) {
    const double var = std::max(sum_sq / N - mean * mean, 0.0) * N / (N - 1.0);
    out.rel_stderr = std::sqrt(var / N) / mean;
  }
  return out;
}

std::vector<double> projections(const sampling::SampleBatch& batch, const Direction& theta) {
  if (theta.dim() != batch.dim()) throw DimensionMismatch("direction does not match batch dimension");
  const Vector v = batch.points.transpose() * theta.vec();
  return std::vector<double>(v.data(), v.data() + v.size());
}

namespace {

void check_query(const CentroidQuery& query) {
  if (!(query.q >= 1.0)) throw InvalidArgument("centroid bodies need q >= 1");
}

CentroidEstimate finish(const PowerMoment& m, double log_prefactor, const sampling::SampleBatch& batch,
                        const CentroidQuery& query) {
  CentroidEstimate est;
  est.sample_size = static_cast<std::size_t>(batch.size());
  est.q = query.q;
  est.theta = query.theta;
  if (m.positive == 0) {
    est.degenerate = true;
    est.value = 0.0;
    est.stderr_ = kInf;
    return est;
  }
  est.value = std::exp((log_prefactor + m.log_mean) / query.q);
  est.stderr_ = est.value * m.rel_stderr / query.q;
  return est;
}

}  // namespace

CentroidEstimate h_zq_plus(const sampling::SampleBatch& batch, const CentroidQuery& query, double volume) {
  check_query(query);
  if (!query.one_sided) throw InvalidArgument("h_zq_plus expects a one-sided query");
  std::vector<double> v = projections(batch, query.theta);
  for (double& x : v) x = std::max(x, 0.0);
  return finish(power_moment(std::move(v), query.q), std::log(2.0 * volume), batch, query);
}

CentroidEstimate h_zq(const sampling::SampleBatch& batch, const CentroidQuery& query, double volume) {
  check_query(query);
  if (query.one_sided) throw InvalidArgument("h_zq expects a two-sided query");
  std::vector<double> v = projections(batch, query.theta);
  for (double& x : v) x = std::abs(x);
  return finish(power_moment(std::move(v), query.q), std::log(volume), batch, query);
}

double log_gamma_ratio(double n, double q) {
  return std::lgamma(n) + std::lgamma(q + 1.0) - std::lgamma(n + q + 1.0);
}

nlohmann::json to_json(const CheckRow& row) {
  return {{"lemma", row.lemma}, {"n", row.n},         {"body", row.body},   {"q", row.q},
          {"theta_seed", row.theta_seed}, {"value", row.value}, {"lower", row.lower},
          {"upper", row.upper},   {"stderr", row.stderr_}, {"pass", row.pass}};
}

}  // namespace convexlab::centroid
