#pragma once

#include <functional>
#include <span>
#include <vector>

namespace convexlab::stats {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

// Two-sample Kolmogorov-Smirnov test with the Stephens small-sample
// correction on the effective size n*m/(n+m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// One-sample test against a continuous CDF.
KsResult ks_one_sample(std::span<const double> data, const std::function<double(double)>& cdf);

// Upper tail P(X^2_dof > statistic).
double chi_square_survival(double statistic, double dof);

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanEstimate mean_with_stderr(std::span<const double> values);

// Quantile with linear interpolation between order statistics (type 7).
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

}  // namespace convexlab::stats
