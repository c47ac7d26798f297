#include <algorithm>
#include <cmath>

#include "convexlab/centroid.hpp"
#include "moments.hpp"

namespace convexlab::centroid {

BracketReport check_support_bracket(const geometry::ConvexBody& body, const Direction& theta, double q,
                             const sampling::SampleBatch& batch, double volume) {
  const double h_body = geometry::support(body, theta);
  const double n = static_cast<double>(body.dim());
  BracketReport r;
  r.lower = std::exp((std::log(2.0) - 2.0 + log_gamma_ratio(n, q)) / q) * h_body;
  r.upper = std::exp(std::log(2.0) / q) * h_body;
  const CentroidEstimate est = h_zq_plus(batch, {q, theta, true}, volume);
  r.value = est.value;
  r.stderr_ = est.stderr_;
  const double slack = std::isfinite(r.stderr_) ? 4.0 * r.stderr_ : 0.0;
  r.pass = r.value >= r.lower - slack && r.value <= r.upper + slack;
  return r;
}

InclusionReport check_inclusion_q_r(const sampling::SampleBatch& batch, const Direction& theta, double q,
                                    double r, double volume) {
  if (!(q >= 1.0 && q <= r)) throw InvalidArgument("inclusion check needs 1 <= q <= r");
  InclusionReport rep;
  const double exponent = 1.0 / q - 1.0 / r;
  rep.factor = std::pow(2.0 / M_E, exponent);
  const CentroidEstimate hq = h_zq_plus(batch, {q, theta, true}, volume);
  const CentroidEstimate hr = h_zq_plus(batch, {r, theta, true}, volume);
  rep.h_q = hq.value;
  rep.h_r = hr.value;
  if (q == r) {
    rep.relative_stderr = 0.0;
    rep.pass = true;
  } else {
    rep.relative_stderr = std::hypot(hq.relative_stderr(), hr.relative_stderr());
    rep.pass = rep.factor * rep.h_q <= rep.h_r * (1.0 + 4.0 * rep.relative_stderr);
  }
  const double upper_scale = (r / q) * std::pow((2.0 * M_E - 2.0) / M_E, exponent);
  rep.upper_constant = rep.h_q > 0.0 ? rep.h_r / (upper_scale * rep.h_q) : kInf;
  return rep;
}

TailReport check_tail_mass(const sampling::SampleBatch& batch, const Direction& theta, double q,
                               double t, double volume) {
  if (!(q >= 2.0)) throw InvalidArgument("the tail check needs q >= 2");
  std::vector<double> v = projections(batch, theta);
  std::vector<double> plus(v.size());
  std::transform(v.begin(), v.end(), plus.begin(), [](double x) { return std::max(x, 0.0); });
  const PowerMoment mq = power_moment(plus, q);
  const PowerMoment m2q = power_moment(plus, 2.0 * q);
  if (m2q.positive == 0) throw InvalidArgument("tail check: all projections are nonpositive (m_2q = 0)");

  TailReport rep;
  const double h = std::exp((std::log(2.0 * volume) + mq.log_mean) / q);
  rep.threshold = t * h;
  std::size_t above = 0;
  for (double x : v) above += x > rep.threshold ? 1 : 0;
  const double N = static_cast<double>(v.size());
  rep.empirical_tail = static_cast<double>(above) / N;
  rep.stderr_ = std::sqrt(rep.empirical_tail * (1.0 - rep.empirical_tail) / N);

  // m_k = 2 mean(<x,theta>_+^k); the ratio m_q^2 / m_2q = 2 mean_q^2 / mean_2q.
  const double factor = std::pow(1.0 - 2.0 * std::pow(t, q), 2.0);
  const double ratio = 2.0 * std::exp(2.0 * mq.log_mean - m2q.log_mean);
  rep.pz_bound = factor * ratio;
  rep.pz_bound_exact = 0.5 * rep.pz_bound;
  rep.pass = rep.empirical_tail >= rep.pz_bound - 4.0 * rep.stderr_;
  return rep;
}

IsotropicFloorReport check_isotropic_floor(const sampling::SampleBatch& isotropic_batch,
                                    const std::vector<Direction>& directions, double L_K, double floor,
                                    double q, double volume) {
  if (!(L_K > 0.0)) throw InvalidArgument("L_K must be positive");
  IsotropicFloorReport rep;
  rep.floor = floor;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const CentroidEstimate plus = h_zq_plus(isotropic_batch, {q, directions[i], true}, volume);
    const CentroidEstimate two = h_zq(isotropic_batch, {q, directions[i], false}, volume);
    const double ratio = plus.value / L_K;
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.argmin = i;
    }
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.max_two_sided_ratio =
        std::max(rep.max_two_sided_ratio, plus.value / (std::pow(2.0, 1.0 / q) * two.value));
  }
  rep.pass = !directions.empty() && rep.min_ratio >= floor;
  return rep;
}

double estimate_tail_constant(const sampling::SampleBatch& batch, const std::vector<Direction>& directions,
                              double q, double volume) {
  double min_tail = 1.0;
  for (const auto& d : directions) {
    min_tail = std::min(min_tail, check_tail_mass(batch, d, q, 0.5, volume).empirical_tail);
  }
  if (!(min_tail > 0.0)) throw NumericFailure("tail constant: empty tail in some direction");
  return std::pow(min_tail, -1.0 / q);
}

double borell_ratio(const sampling::SampleBatch& batch, const Direction& theta, double p, double q,
                    double volume) {
  const CentroidEstimate hp = h_zq(batch, {p, theta, false}, volume);
  const CentroidEstimate hq = h_zq(batch, {q, theta, false}, volume);
  return hq.value / ((q / p) * hp.value);
}

}  // namespace convexlab::centroid
