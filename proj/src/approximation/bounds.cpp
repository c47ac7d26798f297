#include <algorithm>
#include <cmath>

#include "convexlab/approximation.hpp"

namespace convexlab::approximation {

double q_select(long N, long n, double beta, double C_hat) {
  if (n < 1 || N < n) throw InvalidArgument("q_select needs N >= n >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
  if (!(C_hat > 1.0)) throw InvalidArgument("C_hat must exceed 1");
  const double q = beta * std::log(static_cast<double>(N) / static_cast<double>(n)) / (2.0 * std::log(C_hat));
  return std::max(2.0, q);
}

double log_failure_bound(long N, long n, double q, double C_hat) {
  if (n < 1 || N <= n) throw InvalidArgument("failure bound needs N > n >= 1");
  if (!(q >= 2.0)) throw InvalidArgument("failure bound needs q >= 2");
  if (!(C_hat > 1.0)) throw InvalidArgument("C_hat must exceed 1");
  const double Nd = static_cast<double>(N);
  const double nd = static_cast<double>(n);
  const double log_binom = std::lgamma(Nd + 1.0) - std::lgamma(nd + 1.0) - std::lgamma(Nd - nd + 1.0);
  // C^-q = exp(-q ln C); log1p keeps the tail term accurate when it is tiny.
  const double tail = std::log1p(-std::exp(-q * std::log(C_hat)));
  return std::log(2.0) + log_binom + (Nd - nd) * tail;
}

double failure_bound(long N, long n, double q, double C_hat) {
  return std::exp(std::min(0.0, log_failure_bound(N, n, q, C_hat)));
}

}  // namespace convexlab::approximation
