#pragma once

#include <string>
#include <vector>

#include "convexlab/types.hpp"

namespace convexlab::lp {

// All LP tolerances live here so property tests can tune one record.
struct NumericPolicy {
  double feasibility = 1e-9;
  double optimality = 1e-8;
  double pivot = 1e-11;
  // Degenerate pivots tolerated (as a multiple of rows + columns) before
  // switching from Dantzig pricing to Bland's rule.
  int bland_after_factor = 5;
  int refactor_every = 50;
};

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(Status s);

// maximize  objective' x
// s.t.      A.row(i) x  (relations[i])  rhs[i]
//           lower <= x <= upper      (entries may be infinite)
struct LinearProgram {
  Vector objective;
  Matrix A;
  Vector rhs;
  std::vector<Relation> relations;
  Vector lower;
  Vector upper;

  // Empty problem over `vars` nonnegative variables.
  static LinearProgram with_variables(Eigen::Index vars);

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_constraints() const { return A.rows(); }

  void add_constraint(const Vector& row, Relation rel, double value);
  void set_free(Eigen::Index var);
  void validate() const;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  Vector x;                     // primal point when optimal
  double objective_value = 0.0;
  Vector duals;                 // row multipliers (optimal: dual solution,
                                // infeasible: phase-one multipliers)
  int iterations = 0;
  bool bland_engaged = false;

  bool optimal() const { return status == Status::kOptimal; }
};

LpSolution solve(const LinearProgram& lp, const NumericPolicy& policy = {});

// Residual diagnostics for an optimal solution.
struct KktResiduals {
  double primal = 0.0;           // max constraint / bound violation
  double complementarity = 0.0;  // max |y_i * slack_i|
  double dual_sign = 0.0;        // max sign violation of y against relations
  double gap = 0.0;              // dual objective - primal objective
};

KktResiduals kkt_residuals(const LinearProgram& lp, const LpSolution& sol);

// Text rendering of the standard-form problem, for failure triage.
std::string debug_dump(const LinearProgram& lp);

// --- hull queries -------------------------------------------------------

struct HullMembership {
  bool inside = false;
  Vector weights;  // convex coefficients when inside, empty otherwise
};

// Feasibility of sum_i w_i p_i = x, sum_i w_i = 1, w >= 0.
HullMembership hull_membership(const PointSet& points, const Vector& x,
                               const NumericPolicy& policy = {});

// Largest t >= 0 with t*v in conv(points); 0 when no such t exists.
// Requires v != 0.
double max_scale_in_hull(const PointSet& points, const Vector& v,
                         const NumericPolicy& policy = {});

}  // namespace convexlab::lp
