#include "crq/simplex.hpp"

#include <cassert>

#include "crq/errors.hpp"

namespace crq {

namespace {

// Dense tableau: rows[i] has ncols+1 entries, last is the rhs.
struct Tableau {
  int nrows = 0;
  int ncols = 0;
  std::vector<std::vector<Rat>> rows;
  std::vector<int> basis; // basis[i] = column basic in row i

  void pivot(int r, int c) {
    Rat p = rows[r][c];
    assert(p != 0);
    for (auto& v : rows[r]) v /= p;
    for (int i = 0; i < nrows; ++i) {
      if (i == r) continue;
      Rat f = rows[i][c];
      if (f == 0) continue;
      for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }
};

// Minimizes cost.x over the current tableau with Bland's rule.
// Returns false if unbounded below. `reduced` receives the final reduced
// costs (size ncols).
bool simplex_min(Tableau& t, const std::vector<Rat>& cost, std::vector<Rat>& reduced) {
  for (;;) {
    reduced.assign(t.ncols, Rat(0));
    for (int j = 0; j < t.ncols; ++j) {
      Rat r = cost[j];
      for (int i = 0; i < t.nrows; ++i) {
        const Rat& cb = cost[t.basis[i]];
        if (cb != 0) r -= cb * t.rows[i][j];
      }
      reduced[j] = r;
    }
    int enter = -1;
    for (int j = 0; j < t.ncols; ++j)
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return true;

    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < t.nrows; ++i) {
      const Rat& a = t.rows[i][enter];
      if (a <= 0) continue;
      Rat ratio = t.rows[i][t.ncols] / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false; // unbounded
    t.pivot(leave, enter);
  }
}

}  // namespace

LpSolution lp_solve(const LinearProgram& lp) {
  const int m = int(lp.A.size());
  const int n = m ? int(lp.A[0].size()) : int(lp.c.size());

  // Phase 1 tableau: [A | I | b] with b >= 0 (rows negated as needed).
  Tableau t;
  t.nrows = m;
  t.ncols = n + m;
  t.rows.assign(m, std::vector<Rat>(t.ncols + 1, Rat(0)));
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    int s = lp.b[i] < 0 ? -1 : 1;
    row_sign[i] = s;
    for (int j = 0; j < n; ++j) t.rows[i][j] = s * lp.A[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i][t.ncols] = s * lp.b[i];
    t.basis.push_back(n + i);
  }

  std::vector<Rat> phase1_cost(t.ncols, Rat(0));
  for (int i = 0; i < m; ++i) phase1_cost[n + i] = 1;
  std::vector<Rat> reduced;
  bool ok = simplex_min(t, phase1_cost, reduced);
  assert(ok); // phase 1 is bounded below by 0
  (void)ok;

  Rat w = 0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) w += t.rows[i][t.ncols];

  LpSolution sol;
  if (w > 0) {
    // Infeasible. Simplex multipliers: y_i = 1 - reduced cost of artificial i,
    // flipped back for rows that were negated.
    sol.status = LpStatus::Infeasible;
    sol.farkas.assign(m, Rat(0));
    for (int i = 0; i < m; ++i)
      sol.farkas[i] = row_sign[i] * (Rat(1) - reduced[n + i]);
    return sol;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (int i = 0; i < t.nrows; ++i) {
    if (t.basis[i] < n) continue;
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (t.rows[i][j] != 0) {
        enter = j;
        break;
      }
    if (enter >= 0) t.pivot(i, enter);
  }
  {
    // Remove rows still basic in an artificial (all-zero over original cols).
    Tableau t2;
    t2.ncols = t.ncols;
    for (int i = 0; i < t.nrows; ++i) {
      if (t.basis[i] >= n) continue;
      t2.rows.push_back(t.rows[i]);
      t2.basis.push_back(t.basis[i]);
    }
    t2.nrows = int(t2.rows.size());
    t = std::move(t2);
  }

  // Phase 2.
  std::vector<Rat> cost(t.ncols, Rat(0));
  for (int j = 0; j < n && j < int(lp.c.size()); ++j) cost[j] = -lp.c[j]; // maximize
  // Forbid artificials from re-entering.
  // (Their reduced costs stay nonnegative because we zero their columns.)
  for (int i = 0; i < t.nrows; ++i)
    for (int j = n; j < t.ncols; ++j) t.rows[i][j] = 0;

  if (!simplex_min(t, cost, reduced)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, Rat(0));
  for (int i = 0; i < t.nrows; ++i)
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.rows[i][t.ncols];
  sol.objective = 0;
  for (int j = 0; j < n && j < int(lp.c.size()); ++j) sol.objective += lp.c[j] * sol.x[j];
  return sol;
}

LpSolution lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
  LinearProgram lp;
  lp.A = A;
  lp.b = b;
  lp.c.assign(A.empty() ? 0 : A[0].size(), Rat(0));
  return lp_solve(lp);
}

}  // namespace crq
