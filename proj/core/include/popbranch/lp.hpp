#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace popbranch {

enum class Sense { LessEq, Eq, GreaterEq };

struct LpRow {
  std::vector<std::pair<int, mpq_class>> terms;
  Sense sense = Sense::LessEq;
  mpq_class rhs;
};

/// minimize objective·x subject to rows, x >= 0.
struct LpProblem {
  int num_vars = 0;
  std::vector<mpq_class> objective;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  mpq_class value;
  std::vector<mpq_class> x;
  /// Row duals y with objective = y·rhs at optimum; y_i >= 0 on >= rows and
  /// y_i <= 0 on <= rows.
  std::vector<mpq_class> duals;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex over exact rationals with Bland's rule.
/// Throws Error(BudgetExceeded) after `max_pivots` pivots.
LpSolution solve_lp(const LpProblem& problem, std::size_t max_pivots = 200000);

}  // namespace popbranch
