#pragma once

#include <vector>

#include "crq/rational.hpp"

namespace crq {

/// Exact-arithmetic linear program in standard form:
///   maximize c.x  subject to  A x = b, x >= 0.
struct LinearProgram {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  std::vector<Rat> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> x;       // basic feasible (vertex) solution when Optimal
  Rat objective = 0;
  /// On Infeasible: a Farkas certificate y with y.A <= 0 (componentwise over
  /// columns) and y.b > 0.
  std::vector<Rat> farkas;
};

/// Two-phase dense simplex over the rationals with Bland's rule; pivoting is
/// deterministic (lowest eligible index), so results are reproducible.
LpSolution lp_solve(const LinearProgram& lp);

/// Phase 1 only: feasibility plus a vertex, or a Farkas certificate.
LpSolution lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b);

}  // namespace crq
