#include "lossylab/lp.hpp"

#include <stdexcept>

namespace lossylab {

namespace {

// Dense tableau for min c·x, rows Ax {<=,>=,=} b after sign normalisation.
// Columns: structural vars, then one slack/surplus per inequality, then one
// artificial per row that needs it, then the rhs.
struct Tableau {
  std::size_t nrows = 0, ncols = 0;      // ncols excludes the rhs column
  std::vector<std::vector<Rat>> t;       // nrows+1 by ncols+1; last row = reduced costs
  std::vector<std::size_t> basis;        // basic column per row

  Rat& at(std::size_t r, std::size_t c) { return t[r][c]; }
  Rat& rhs(std::size_t r) { return t[r][ncols]; }
  Rat& cost(std::size_t c) { return t[nrows][c]; }
  Rat& objective() { return t[nrows][ncols]; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rat inv = 1 / t[pr][pc];
    for (auto& v : t[pr]) v *= inv;
    for (std::size_t r = 0; r <= nrows; ++r) {
      if (r == pr) continue;
      Rat factor = t[r][pc];
      if (factor == 0) continue;
      for (std::size_t c = 0; c <= ncols; ++c) t[r][c] -= factor * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties broken by lowest basic column index.
  // Returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = ncols;
      for (std::size_t c = 0; c < ncols; ++c) {
        if (allowed[c] && cost(c) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == ncols) return true;  // optimal
      std::size_t leave = nrows;
      Rat best_ratio;
      for (std::size_t r = 0; r < nrows; ++r) {
        if (t[r][enter] <= 0) continue;
        Rat ratio = rhs(r) / t[r][enter];
        if (leave == nrows || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == nrows) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  // Reduced-cost row for the given column costs, priced out over the basis.
  void load_costs(const std::vector<Rat>& col_cost) {
    for (std::size_t c = 0; c <= ncols; ++c) t[nrows][c] = 0;
    for (std::size_t c = 0; c < ncols; ++c) t[nrows][c] = col_cost[c];
    for (std::size_t r = 0; r < nrows; ++r) {
      Rat cb = col_cost[basis[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c <= ncols; ++c) t[nrows][c] -= cb * t[r][c];
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n) throw std::invalid_argument("lp: objective size mismatch");
  for (const auto& row : lp.rows)
    if (row.coeff.size() != n) throw std::invalid_argument("lp: row size mismatch");

  // Normalise rows to nonnegative rhs.
  std::vector<LpRow> rows = lp.rows;
  for (auto& row : rows) {
    if (row.rhs < 0) {
      for (auto& a : row.coeff) a = -a;
      row.rhs = -row.rhs;
      if (row.rel == Rel::Le) row.rel = Rel::Ge;
      else if (row.rel == Rel::Ge) row.rel = Rel::Le;
    }
  }

  std::size_t num_slack = 0;
  for (const auto& row : rows)
    if (row.rel != Rel::Eq) ++num_slack;

  // Artificials: Ge and Eq rows always need one; Le rows start basic in their
  // slack.
  std::size_t num_art = 0;
  for (const auto& row : rows)
    if (row.rel != Rel::Le) ++num_art;

  Tableau tab;
  tab.nrows = m;
  tab.ncols = n + num_slack + num_art;
  tab.t.assign(m + 1, std::vector<Rat>(tab.ncols + 1, Rat(0)));
  tab.basis.assign(m, 0);

  std::size_t slack_at = n;
  std::size_t art_at = n + num_slack;
  std::vector<std::size_t> row_slack(m, tab.ncols);  // slack column per row, if any
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = rows[r].coeff[c];
    tab.rhs(r) = rows[r].rhs;
    if (rows[r].rel == Rel::Le) {
      tab.at(r, slack_at) = 1;
      row_slack[r] = slack_at;
      tab.basis[r] = slack_at++;
    } else if (rows[r].rel == Rel::Ge) {
      tab.at(r, slack_at) = -1;
      row_slack[r] = slack_at++;
      tab.at(r, art_at) = 1;
      tab.basis[r] = art_at++;
    } else {
      tab.at(r, art_at) = 1;
      tab.basis[r] = art_at++;
    }
  }

  std::vector<bool> allowed(tab.ncols, true);

  // Phase 1: minimise the artificial mass when any artificial is basic.
  if (num_art > 0) {
    std::vector<Rat> phase1(tab.ncols, Rat(0));
    for (std::size_t c = n + num_slack; c < tab.ncols; ++c) phase1[c] = 1;
    tab.load_costs(phase1);
    if (!tab.run(allowed)) throw std::logic_error("lp: phase 1 unbounded");
    if (tab.objective() != 0) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis; an all-zero row in the
    // real columns is redundant and harmless to leave pivoted on zero rhs.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis[r] < n + num_slack) continue;
      for (std::size_t c = 0; c < n + num_slack; ++c) {
        if (tab.t[r][c] != 0) {
          tab.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = n + num_slack; c < tab.ncols; ++c) allowed[c] = false;
  }

  // Phase 2.
  std::vector<Rat> cost(tab.ncols, Rat(0));
  for (std::size_t c = 0; c < n; ++c) cost[c] = lp.maximize ? -lp.objective[c] : lp.objective[c];
  tab.load_costs(cost);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] >= n + num_slack && tab.rhs(r) != 0)
      throw std::logic_error("lp: artificial stuck in basis with nonzero value");
  }
  if (!tab.run(allowed)) {
    LpSolution sol;
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, Rat(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.rhs(r);
  }
  sol.objective = 0;
  for (std::size_t c = 0; c < n; ++c) sol.objective += lp.objective[c] * sol.x[c];

  // Row multipliers from the slack reduced costs (min form): for a Le row of
  // a maximisation problem this is the classic dual variable; Ge rows carry
  // the opposite sign and Eq rows have no slack (reported as 0).
  sol.row_duals.assign(m, Rat(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (row_slack[r] == tab.ncols) continue;
    Rat rc = tab.cost(row_slack[r]);
    sol.row_duals[r] = (rows[r].rel == Rel::Ge) ? -rc : rc;
  }
  return sol;
}

}  // namespace lossylab
