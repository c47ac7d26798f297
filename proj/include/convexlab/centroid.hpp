#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "convexlab/sampling.hpp"

namespace convexlab::centroid {

struct CentroidQuery {
  double q = 2.0;
  Direction theta;
  bool one_sided = true;
};

struct CentroidEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t sample_size = 0;
  double q = 0.0;
  Direction theta;
  // All inner products were nonpositive: the estimate is 0 with an
  // infinite relative error.
  bool degenerate = false;

  double relative_stderr() const { return value > 0.0 ? stderr_ / value : kInf; }
};

// (2 |K| mean <x,theta>_+^q)^{1/q}; `volume` is |K| of the sampled body.
CentroidEstimate h_zq_plus(const sampling::SampleBatch& batch, const CentroidQuery& query,
                           double volume = 1.0);
// (|K| mean |<x,theta>|^q)^{1/q}.
CentroidEstimate h_zq(const sampling::SampleBatch& batch, const CentroidQuery& query,
                      double volume = 1.0);

// Gamma(n) Gamma(q+1) / Gamma(n+q+1), in log form.
double log_gamma_ratio(double n, double q);

struct BracketReport {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  double stderr_ = 0.0;
  bool pass = false;
};

// lower = (2/e^2)^{1/q} (Gamma ratio)^{1/q} h_K, upper = 2^{1/q} h_K.
BracketReport check_support_bracket(const geometry::ConvexBody& body, const Direction& theta, double q,
                             const sampling::SampleBatch& batch, double volume = 1.0);

struct InclusionReport {
  double factor = 1.0;  // (2/e)^{1/q - 1/r}
  double h_q = 0.0;
  double h_r = 0.0;
  double relative_stderr = 0.0;
  bool pass = false;
  // h_r / ((r/q) ((2e-2)/e)^{1/q-1/r} h_q): observed constant of the
  // right-hand inclusion, recorded only.
  double upper_constant = 0.0;
};

InclusionReport check_inclusion_q_r(const sampling::SampleBatch& batch, const Direction& theta, double q,
                                    double r, double volume = 1.0);

struct TailReport {
  double empirical_tail = 0.0;
  double pz_bound = 0.0;        // (1 - 2 t^q)^2 m_q^2 / m_{2q}
  double pz_bound_exact = 0.0;  // same with E g^2 = 2 m_{2q}
  double threshold = 0.0;       // t * h_{Z_q^+}
  double stderr_ = 0.0;
  bool pass = false;
};

// Tail mass of {<x,theta> > t h_{Z_q^+}(theta)} against the sample
// Paley-Zygmund lower bound, with m_k = mean of 2 <x,theta>_+^k.
TailReport check_tail_mass(const sampling::SampleBatch& batch, const Direction& theta, double q,
                               double t = 0.5, double volume = 1.0);

struct IsotropicFloorReport {
  double min_ratio = kInf;
  double max_ratio = 0.0;
  std::size_t argmin = 0;
  double floor = 0.1;
  bool pass = false;
  // max over directions of h_{Z_2^+} / (sqrt(2) h_{Z_2}); <= 1 up to noise.
  double max_two_sided_ratio = 0.0;
};

// min over directions of h_{Z_2^+}(theta) / L_K against a configured floor.
IsotropicFloorReport check_isotropic_floor(const sampling::SampleBatch& isotropic_batch,
                                    const std::vector<Direction>& directions, double L_K,
                                    double floor = 0.1, double q = 2.0, double volume = 1.0);

// C_hat = (min over directions of the tail mass at t = 1/2)^{-1/q}.
double estimate_tail_constant(const sampling::SampleBatch& batch, const std::vector<Direction>& directions,
                              double q = 2.0, double volume = 1.0);

// h_{Z_q} / ((q/p) h_{Z_p}): the observed constant of the two-sided
// comparison between centroid bodies.
double borell_ratio(const sampling::SampleBatch& batch, const Direction& theta, double p, double q,
                    double volume = 1.0);

struct CheckRow {
  std::string lemma;
  Eigen::Index n = 0;
  std::string body;
  double q = 0.0;
  std::uint64_t theta_seed = 0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double stderr_ = 0.0;
  bool pass = false;
};

nlohmann::json to_json(const CheckRow& row);

}  // namespace convexlab::centroid
