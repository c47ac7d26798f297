#include <algorithm>
#include <cmath>
#include <sstream>

#include "convexlab/lp.hpp"

namespace convexlab::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LinearProgram LinearProgram::with_variables(Eigen::Index vars) {
  LinearProgram lp;
  lp.objective = Vector::Zero(vars);
  lp.A = Matrix(0, vars);
  lp.rhs = Vector(0);
  lp.lower = Vector::Zero(vars);
  lp.upper = Vector::Constant(vars, kInf);
  return lp;
}

void LinearProgram::add_constraint(const Vector& row, Relation rel, double value) {
  if (row.size() != num_vars()) {
    throw DimensionMismatch("constraint row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(num_vars()));
  }
  const Eigen::Index m = A.rows();
  A.conservativeResize(m + 1, Eigen::NoChange);
  A.row(m) = row.transpose();
  rhs.conservativeResize(m + 1);
  rhs[m] = value;
  relations.push_back(rel);
}

void LinearProgram::set_free(Eigen::Index var) {
  lower[var] = -kInf;
  upper[var] = kInf;
}

void LinearProgram::validate() const {
  const Eigen::Index n = num_vars();
  if (A.cols() != n || lower.size() != n || upper.size() != n) {
    throw DimensionMismatch("linear program variable count is inconsistent");
  }
  if (A.rows() != rhs.size() ||
      static_cast<std::size_t>(A.rows()) != relations.size()) {
    throw DimensionMismatch("linear program constraint count is inconsistent");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) throw InvalidArgument("variable bounds are crossed");
  }
}

namespace {

enum class VarKind { kShifted, kReflected, kSplit };

struct VarMap {
  VarKind kind;
  Eigen::Index col;  // first standard-form column
  double offset;     // lo or hi
};

// maximize c'y  s.t.  A y = b (b >= 0), y >= 0
struct StandardForm {
  Matrix A;
  Vector b;
  Vector c;
  double objective_offset = 0.0;
  std::vector<VarMap> vars;
  std::vector<double> row_sign;  // +1 or -1 for every standard row
  Eigen::Index structural = 0;   // columns that map to original variables
  Eigen::Index first_artificial = 0;
  std::vector<Eigen::Index> initial_basis;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const Eigen::Index n = lp.num_vars();

  Eigen::Index cols = 0;
  std::vector<Eigen::Index> range_vars;
  for (Eigen::Index j = 0; j < n; ++j) {
    const bool lo_finite = std::isfinite(lp.lower[j]);
    const bool hi_finite = std::isfinite(lp.upper[j]);
    if (lo_finite) {
      sf.vars.push_back({VarKind::kShifted, cols++, lp.lower[j]});
      if (hi_finite) range_vars.push_back(j);
    } else if (hi_finite) {
      sf.vars.push_back({VarKind::kReflected, cols++, lp.upper[j]});
    } else {
      sf.vars.push_back({VarKind::kSplit, cols, 0.0});
      cols += 2;
    }
  }
  sf.structural = cols;

  const Eigen::Index m0 = lp.num_constraints();
  const Eigen::Index m = m0 + static_cast<Eigen::Index>(range_vars.size());

  // Rows in terms of structural columns, plus relation and rhs.
  Matrix rows = Matrix::Zero(m, cols);
  Vector b(m);
  std::vector<Relation> rel(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m0; ++i) {
    double rhs = lp.rhs[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = lp.A(i, j);
      if (a == 0.0) continue;
      const VarMap& vm = sf.vars[static_cast<std::size_t>(j)];
      switch (vm.kind) {
        case VarKind::kShifted:
          rows(i, vm.col) = a;
          rhs -= a * vm.offset;
          break;
        case VarKind::kReflected:
          rows(i, vm.col) = -a;
          rhs -= a * vm.offset;
          break;
        case VarKind::kSplit:
          rows(i, vm.col) = a;
          rows(i, vm.col + 1) = -a;
          break;
      }
    }
    b[i] = rhs;
    rel[static_cast<std::size_t>(i)] = lp.relations[static_cast<std::size_t>(i)];
  }
  for (std::size_t k = 0; k < range_vars.size(); ++k) {
    const Eigen::Index j = range_vars[k];
    const Eigen::Index i = m0 + static_cast<Eigen::Index>(k);
    rows(i, sf.vars[static_cast<std::size_t>(j)].col) = 1.0;
    b[i] = lp.upper[j] - lp.lower[j];
    rel[static_cast<std::size_t>(i)] = Relation::kLessEqual;
  }

  Eigen::Index slacks = 0;
  for (const auto r : rel) slacks += (r == Relation::kEqual) ? 0 : 1;

  // Decide row signs and which rows need artificials.
  sf.row_sign.assign(static_cast<std::size_t>(m), 1.0);
  std::vector<double> slack_coef(static_cast<std::size_t>(m), 0.0);
  Eigen::Index artificials = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    double coef = rel[ui] == Relation::kLessEqual    ? 1.0
                  : rel[ui] == Relation::kGreaterEqual ? -1.0
                                                       : 0.0;
    if (b[i] < 0.0) {
      sf.row_sign[ui] = -1.0;
      coef = -coef;
    }
    slack_coef[ui] = coef;
    if (coef != 1.0) ++artificials;
  }

  const Eigen::Index total = cols + slacks + artificials;
  sf.A = Matrix::Zero(m, total);
  sf.b = Vector(m);
  sf.first_artificial = cols + slacks;
  sf.initial_basis.assign(static_cast<std::size_t>(m), -1);
  Eigen::Index slack_col = cols;
  Eigen::Index art_col = sf.first_artificial;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double s = sf.row_sign[ui];
    sf.A.row(i).head(cols) = s * rows.row(i);
    sf.b[i] = s * b[i];
    if (rel[ui] != Relation::kEqual) {
      sf.A(i, slack_col) = slack_coef[ui];
      if (slack_coef[ui] == 1.0) sf.initial_basis[ui] = slack_col;
      ++slack_col;
    }
    if (sf.initial_basis[ui] < 0) {
      sf.A(i, art_col) = 1.0;
      sf.initial_basis[ui] = art_col++;
    }
  }

  sf.c = Vector::Zero(total);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double cj = lp.objective[j];
    const VarMap& vm = sf.vars[static_cast<std::size_t>(j)];
    switch (vm.kind) {
      case VarKind::kShifted:
        sf.c[vm.col] = cj;
        sf.objective_offset += cj * vm.offset;
        break;
      case VarKind::kReflected:
        sf.c[vm.col] = -cj;
        sf.objective_offset += cj * vm.offset;
        break;
      case VarKind::kSplit:
        sf.c[vm.col] = cj;
        sf.c[vm.col + 1] = -cj;
        break;
    }
  }
  return sf;
}

enum class RunResult { kOptimal, kUnbounded, kIterationLimit };

// Dense revised simplex over an explicit basis inverse.
class RevisedSimplex {
 public:
  RevisedSimplex(const Matrix& A, const Vector& b, std::vector<Eigen::Index> basis,
                 const NumericPolicy& policy)
      : A_(A), b_(b), basis_(std::move(basis)), policy_(policy) {
    const Eigen::Index m = A_.rows();
    is_basic_.assign(static_cast<std::size_t>(A_.cols()), false);
    for (auto j : basis_) is_basic_[static_cast<std::size_t>(j)] = true;
    Binv_ = Matrix::Identity(m, m);
    refactor();
    max_iterations_ = 20 * static_cast<int>(m + A_.cols()) + 1000;
    bland_after_ = policy_.bland_after_factor * static_cast<int>(m + A_.cols());
  }

  // Maximizes cost'y over columns with eligible[j] true.
  RunResult run(const Vector& cost, const std::vector<bool>& eligible) {
    const Eigen::Index m = A_.rows();
    const Eigen::Index ncols = A_.cols();
    int since_refactor = 0;
    for (;;) {
      if (iterations_ >= max_iterations_) return RunResult::kIterationLimit;
      if (since_refactor >= policy_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      Vector cB(m);
      for (Eigen::Index i = 0; i < m; ++i) cB[i] = cost[basis_[static_cast<std::size_t>(i)]];
      const Vector y = Binv_.transpose() * cB;
      const Vector reduced = cost.transpose() - y.transpose() * A_;

      Eigen::Index entering = -1;
      double best = policy_.optimality;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (is_basic_[uj] || !eligible[uj]) continue;
        if (reduced[j] > best) {
          entering = j;
          if (bland_) break;
          best = reduced[j];
        }
      }
      if (entering < 0) {
        duals_ = y;
        return RunResult::kOptimal;
      }

      const Vector w = Binv_ * A_.col(entering);
      Eigen::Index leave = -1;
      double ratio = kInf;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (w[i] <= policy_.pivot) continue;
        const double r = std::max(x_basic_[i], 0.0) / w[i];
        if (leave < 0 || r < ratio - 1e-12 * (1.0 + ratio)) {
          leave = i;
          ratio = r;
        } else if (r <= ratio + 1e-12 * (1.0 + ratio)) {
          const bool prefer =
              bland_ ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                     : w[i] > w[leave];
          if (prefer) {
            leave = i;
            ratio = std::min(ratio, r);
          }
        }
      }
      if (leave < 0) return RunResult::kUnbounded;

      if (ratio <= 1e-12) {
        if (++degenerate_ > bland_after_) {
          if (!bland_) bland_engaged_ = true;
          bland_ = true;
        }
      } else {
        degenerate_ = 0;
      }
      pivot(leave, entering, w, ratio);
      ++iterations_;
      ++since_refactor;
    }
  }

  // Pivots basic artificial columns (index >= first) out where possible.
  void expel_artificials(Eigen::Index first) {
    const Eigen::Index m = A_.rows();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < first) continue;
      const Vector row = Binv_.row(r) * A_;
      Eigen::Index best = -1;
      double best_abs = 1e-9;
      for (Eigen::Index j = 0; j < first; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        if (std::abs(row[j]) > best_abs) {
          best_abs = std::abs(row[j]);
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; artificial stays at zero
      const Vector w = Binv_ * A_.col(best);
      pivot(r, best, w, x_basic_[r] / w[r]);
    }
    refactor();
  }

  Vector primal() const {
    Vector y = Vector::Zero(A_.cols());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      y[basis_[i]] = std::max(x_basic_[static_cast<Eigen::Index>(i)], 0.0);
    }
    return y;
  }

  const Vector& duals() const { return duals_; }
  int iterations() const { return iterations_; }
  bool bland_engaged() const { return bland_engaged_; }

 private:
  void refactor() {
    const Eigen::Index m = A_.rows();
    Matrix B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = A_.col(basis_[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Matrix> lu(B);
    Binv_ = lu.inverse();
    x_basic_ = Binv_ * b_;
  }

  void pivot(Eigen::Index r, Eigen::Index entering, const Vector& w, double step) {
    x_basic_ -= step * w;
    x_basic_[r] = step;
    const double pr = w[r];
    Binv_.row(r) /= pr;
    for (Eigen::Index i = 0; i < Binv_.rows(); ++i) {
      if (i == r || w[i] == 0.0) continue;
      Binv_.row(i) -= w[i] * Binv_.row(r);
    }
    is_basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
    basis_[static_cast<std::size_t>(r)] = entering;
    is_basic_[static_cast<std::size_t>(entering)] = true;
  }

  const Matrix& A_;
  const Vector& b_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> is_basic_;
  NumericPolicy policy_;
  Matrix Binv_;
  Vector x_basic_;
  Vector duals_;
  int iterations_ = 0;
  int max_iterations_ = 0;
  int degenerate_ = 0;
  int bland_after_ = 0;
  bool bland_ = false;
  bool bland_engaged_ = false;
};

Vector original_duals(const StandardForm& sf, const Vector& y, Eigen::Index m0) {
  Vector out(m0);
  for (Eigen::Index i = 0; i < m0; ++i) out[i] = sf.row_sign[static_cast<std::size_t>(i)] * y[i];
  return out;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const NumericPolicy& policy) {
  lp.validate();
  const StandardForm sf = to_standard_form(lp);
  const Eigen::Index total = sf.A.cols();
  const Eigen::Index m0 = lp.num_constraints();
  LpSolution sol;

  RevisedSimplex simplex(sf.A, sf.b, sf.initial_basis, policy);

  if (sf.first_artificial < total) {
    Vector phase1 = Vector::Zero(total);
    phase1.tail(total - sf.first_artificial).setConstant(-1.0);
    const std::vector<bool> all(static_cast<std::size_t>(total), true);
    const RunResult r = simplex.run(phase1, all);
    sol.iterations = simplex.iterations();
    sol.bland_engaged = simplex.bland_engaged();
    if (r == RunResult::kIterationLimit) {
      sol.status = Status::kIterationLimit;
      return sol;
    }
    const Vector y = simplex.primal();
    const double infeasibility = y.tail(total - sf.first_artificial).sum();
    const double scale = 1.0 + (sf.b.size() ? sf.b.cwiseAbs().maxCoeff() : 0.0);
    if (infeasibility > policy.feasibility * scale) {
      sol.status = Status::kInfeasible;
      sol.duals = original_duals(sf, simplex.duals(), m0);
      return sol;
    }
    simplex.expel_artificials(sf.first_artificial);
  }

  std::vector<bool> eligible(static_cast<std::size_t>(total), true);
  for (Eigen::Index j = sf.first_artificial; j < total; ++j) {
    eligible[static_cast<std::size_t>(j)] = false;
  }
  const RunResult r = simplex.run(sf.c, eligible);
  sol.iterations = simplex.iterations();
  sol.bland_engaged = simplex.bland_engaged();
  if (r == RunResult::kIterationLimit) {
    sol.status = Status::kIterationLimit;
    return sol;
  }
  if (r == RunResult::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  const Vector y = simplex.primal();
  sol.x = Vector(lp.num_vars());
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
    const VarMap& vm = sf.vars[static_cast<std::size_t>(j)];
    switch (vm.kind) {
      case VarKind::kShifted: sol.x[j] = vm.offset + y[vm.col]; break;
      case VarKind::kReflected: sol.x[j] = vm.offset - y[vm.col]; break;
      case VarKind::kSplit: sol.x[j] = y[vm.col] - y[vm.col + 1]; break;
    }
  }
  sol.objective_value = lp.objective.dot(sol.x);
  sol.duals = original_duals(sf, simplex.duals(), m0);
  sol.status = Status::kOptimal;
  return sol;
}

KktResiduals kkt_residuals(const LinearProgram& lp, const LpSolution& sol) {
  KktResiduals res;
  if (!sol.optimal()) return res;
  const Vector ax = lp.A * sol.x;
  const Vector& y = sol.duals;
  double dual_obj = 0.0;
  for (Eigen::Index i = 0; i < lp.num_constraints(); ++i) {
    const double slack = lp.rhs[i] - ax[i];
    switch (lp.relations[static_cast<std::size_t>(i)]) {
      case Relation::kLessEqual:
        res.primal = std::max(res.primal, -slack);
        res.dual_sign = std::max(res.dual_sign, -y[i]);
        break;
      case Relation::kGreaterEqual:
        res.primal = std::max(res.primal, slack);
        res.dual_sign = std::max(res.dual_sign, y[i]);
        break;
      case Relation::kEqual:
        res.primal = std::max(res.primal, std::abs(slack));
        break;
    }
    res.complementarity = std::max(res.complementarity, std::abs(y[i] * slack));
    dual_obj += y[i] * lp.rhs[i];
  }
  const Vector reduced = lp.objective - lp.A.transpose() * y;
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
    const double x = sol.x[j];
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    res.primal = std::max({res.primal, lo - x, x - hi});
    const double r = reduced[j];
    if (r > 0.0) {
      if (std::isfinite(hi)) {
        dual_obj += r * hi;
        res.complementarity = std::max(res.complementarity, r * (hi - x));
      } else {
        res.dual_sign = std::max(res.dual_sign, r);
        dual_obj += r * x;
      }
    } else if (r < 0.0) {
      if (std::isfinite(lo)) {
        dual_obj += r * lo;
        res.complementarity = std::max(res.complementarity, -r * (x - lo));
      } else {
        res.dual_sign = std::max(res.dual_sign, -r);
        dual_obj += r * x;
      }
    }
  }
  res.gap = dual_obj - sol.objective_value;
  return res;
}

std::string debug_dump(const LinearProgram& lp) {
  const StandardForm sf = to_standard_form(lp);
  std::ostringstream os;
  os << "standard form: " << sf.A.rows() << " rows x " << sf.A.cols()
     << " columns (structural " << sf.structural << ", artificials from "
     << sf.first_artificial << ")\n";
  os << "c = " << sf.c.transpose() << "\n";
  for (Eigen::Index i = 0; i < sf.A.rows(); ++i) {
    os << "[" << i << "] " << sf.A.row(i) << " = " << sf.b[i] << "\n";
  }
  return os.str();
}

}  // namespace convexlab::lp
