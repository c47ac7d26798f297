#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>

#include "convexlab/error.hpp"

namespace convexlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Point clouds are stored column-wise: an n x N matrix holds N points of R^n.
using PointSet = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A unit vector of R^n. Construction normalizes; the norm is unit to 1e-12.
class Direction {
 public:
  Direction() = default;

  explicit Direction(const Vector& v) : theta_(v) {
    const double norm = theta_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw InvalidArgument("direction must be a nonzero finite vector");
    }
    theta_ /= norm;
  }

  static Direction axis(Eigen::Index n, Eigen::Index i, double sign = 1.0) {
    Vector e = Vector::Zero(n);
    e[i] = sign;
    return Direction(e);
  }

  const Vector& vec() const { return theta_; }
  Eigen::Index dim() const { return theta_.size(); }
  Direction operator-() const {
    Direction d;
    d.theta_ = -theta_;
    return d;
  }

 private:
  Vector theta_;
};

}  // namespace convexlab
