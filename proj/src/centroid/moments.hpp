#pragma once

#include <vector>

#include "convexlab/centroid.hpp"

namespace convexlab::centroid {

// log of mean(a_i^q) over nonnegative bases, evaluated as a scaled
// log-sum-exp over sorted values (permutation invariant, overflow safe).
struct PowerMoment {
  double log_mean = -kInf;
  double rel_stderr = kInf;
  std::size_t positive = 0;
};

PowerMoment power_moment(std::vector<double> base, double q);

std::vector<double> projections(const sampling::SampleBatch& batch, const Direction& theta);

}  // namespace convexlab::centroid
