#include "popbranch/lp.hpp"

#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, std::vector<mpq_class>(cols + 1)), obj_(cols + 1), basis_(rows, -1) {}

  mpq_class& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  mpq_class& rhs(std::size_t i) { return t_[i].back(); }
  std::vector<mpq_class>& obj() { return obj_; }
  std::vector<int>& basis() { return basis_; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return obj_.size() - 1; }

  // Reduced-cost row for cost vector c given the current basis.
  void price(const std::vector<mpq_class>& c) {
    for (std::size_t j = 0; j <= cols(); ++j) obj_[j] = j < cols() ? c[j] : mpq_class(0);
    for (std::size_t i = 0; i < rows(); ++i) {
      const mpq_class& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j)
        if (t_[i][j] != 0) obj_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const mpq_class p = t_[r][c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols(); ++j)
      if (t_[r][j] != 0) {
        t_[r][j] /= p;
        nz.push_back(j);
      }
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (row[c] == 0) return;
      const mpq_class f = row[c];
      for (std::size_t j : nz) row[j] -= f * t_[r][j];
    };
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(obj_);
    basis_[r] = static_cast<int>(c);
  }

  // Bland's rule; returns false at optimum, throws on budget.
  // `allowed` masks entering columns.
  LpStatus run(const std::vector<char>& allowed, std::size_t& pivots, std::size_t max_pivots) {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j)
        if (allowed[j] && obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols()) return LpStatus::Optimal;
      std::size_t leave = rows();
      mpq_class best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][enter] <= 0) continue;
        mpq_class ratio = t_[i].back() / t_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return LpStatus::Unbounded;
      if (++pivots > max_pivots) throw Error(Errc::BudgetExceeded, "simplex pivot budget exhausted");
      pivot(leave, enter);
    }
  }

 private:
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> obj_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, std::size_t max_pivots) {
  const std::size_t m = problem.rows.size();
  const std::size_t nv = static_cast<std::size_t>(problem.num_vars);

  std::vector<int> sign(m, 1);
  std::vector<Sense> sense(m);
  for (std::size_t i = 0; i < m; ++i) {
    sense[i] = problem.rows[i].sense;
    if (problem.rows[i].rhs < 0) {
      sign[i] = -1;
      if (sense[i] == Sense::LessEq) sense[i] = Sense::GreaterEq;
      else if (sense[i] == Sense::GreaterEq) sense[i] = Sense::LessEq;
    }
  }
  // Column layout: originals, one slack/surplus per inequality, artificials.
  std::vector<int> slack(m, -1), artificial(m, -1);
  std::size_t cols = nv;
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::Eq) slack[i] = static_cast<int>(cols++);
  const std::size_t first_art = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::LessEq) artificial[i] = static_cast<int>(cols++);

  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [var, coef] : problem.rows[i].terms) tab.at(i, var) += sign[i] * coef;
    tab.rhs(i) = sign[i] * problem.rows[i].rhs;
    if (slack[i] >= 0) tab.at(i, slack[i]) = sense[i] == Sense::LessEq ? 1 : -1;
    if (artificial[i] >= 0) tab.at(i, artificial[i]) = 1;
    tab.basis()[i] = sense[i] == Sense::LessEq ? slack[i] : artificial[i];
  }

  LpSolution sol;
  std::vector<char> allowed(cols, 1);
  if (first_art < cols) {
    std::vector<mpq_class> phase1(cols);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1;
    tab.price(phase1);
    tab.run(allowed, sol.pivots, max_pivots);
    if (-tab.obj().back() > 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (static_cast<std::size_t>(tab.basis()[i]) < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (tab.at(i, j) != 0) {
          tab.pivot(i, j);
          break;
        }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = 0;
  }

  std::vector<mpq_class> cost(cols);
  for (std::size_t j = 0; j < nv && j < problem.objective.size(); ++j) cost[j] = problem.objective[j];
  tab.price(cost);
  sol.status = tab.run(allowed, sol.pivots, max_pivots);
  if (sol.status != LpStatus::Optimal) return sol;

  sol.x.assign(nv, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (static_cast<std::size_t>(tab.basis()[i]) < nv) sol.x[tab.basis()[i]] = tab.rhs(i);
  sol.value = 0;
  for (std::size_t j = 0; j < nv && j < problem.objective.size(); ++j) sol.value += problem.objective[j] * sol.x[j];
  sol.duals.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const int id = sense[i] == Sense::LessEq ? slack[i] : artificial[i];
    sol.duals[i] = sign[i] * (-tab.obj()[id]);
  }
  return sol;
}

}  // namespace popbranch
