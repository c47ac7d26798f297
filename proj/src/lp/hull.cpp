#include "convexlab/lp.hpp"

namespace convexlab::lp {

namespace {

void check_points(const PointSet& points, const Vector& x) {
  if (points.cols() == 0) throw InvalidArgument("hull query needs at least one point");
  if (points.rows() != x.size()) {
    throw DimensionMismatch("points live in R^" + std::to_string(points.rows()) +
                            ", query in R^" + std::to_string(x.size()));
  }
}

}  // namespace

HullMembership hull_membership(const PointSet& points, const Vector& x,
                               const NumericPolicy& policy) {
  check_points(points, x);
  const Eigen::Index n = points.rows();
  const Eigen::Index N = points.cols();

  LinearProgram lp = LinearProgram::with_variables(N);
  lp.A.resize(n + 1, N);
  lp.A.topRows(n) = points;
  lp.A.row(n).setOnes();
  lp.rhs.resize(n + 1);
  lp.rhs.head(n) = x;
  lp.rhs[n] = 1.0;
  lp.relations.assign(static_cast<std::size_t>(n + 1), Relation::kEqual);

  const LpSolution sol = solve(lp, policy);
  if (sol.status == Status::kIterationLimit) {
    throw NumericFailure("hull membership LP hit the iteration limit");
  }
  HullMembership out;
  if (!sol.optimal()) return out;
  out.inside = true;
  out.weights = sol.x.cwiseMax(0.0);
  out.weights /= out.weights.sum();
  return out;
}

double max_scale_in_hull(const PointSet& points, const Vector& v,
                         const NumericPolicy& policy) {
  check_points(points, v);
  if (v.isZero(0.0)) throw InvalidArgument("max_scale_in_hull requires v != 0");
  const Eigen::Index n = points.rows();
  const Eigen::Index N = points.cols();

  // Variables: weights w_1..w_N, then t.
  LinearProgram lp = LinearProgram::with_variables(N + 1);
  lp.objective[N] = 1.0;
  lp.A = Matrix::Zero(n + 1, N + 1);
  lp.A.topLeftCorner(n, N) = points;
  lp.A.col(N).head(n) = -v;
  lp.A.row(n).head(N).setOnes();
  lp.rhs = Vector::Zero(n + 1);
  lp.rhs[n] = 1.0;
  lp.relations.assign(static_cast<std::size_t>(n + 1), Relation::kEqual);

  const LpSolution sol = solve(lp, policy);
  switch (sol.status) {
    case Status::kOptimal: return std::max(sol.x[N], 0.0);
    case Status::kInfeasible: return 0.0;
    case Status::kUnbounded: return kInf;
    case Status::kIterationLimit: break;
  }
  throw NumericFailure("max_scale_in_hull LP hit the iteration limit");
}

}  // namespace convexlab::lp
