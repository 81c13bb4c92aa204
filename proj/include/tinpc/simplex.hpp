#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tinpc/rational.hpp"

namespace tinpc {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LpConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// maximize objective . x subject to the constraints. Variables are free
/// unless flagged in `nonnegative` (an empty vector means all free).
struct LpProblem {
  std::size_t variable_count = 0;
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
  std::vector<bool> nonnegative;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

class LpInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LpUnbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact two-phase tableau simplex with Bland's rule. Reports infeasible and
/// unbounded problems through the status.
LpSolution solve_lp(const LpProblem& problem);

/// Same, but throws LpInfeasible / LpUnbounded instead of returning them.
LpSolution simplex_solve(const LpProblem& problem);

}  // namespace tinpc
