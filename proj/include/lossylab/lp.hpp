#pragma once

#include <cstddef>
#include <vector>

#include "lossylab/distribution.hpp"

namespace lossylab {

enum class Rel { Le, Ge, Eq };

struct LpRow {
  std::vector<Rat> coeff;
  Rel rel = Rel::Le;
  Rat rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rat> objective;
  bool maximize = false;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rat objective;
  std::vector<Rat> x;
  std::vector<Rat> row_duals;  // one multiplier per input row (0 for non-binding)
};

// Dense two-phase simplex over exact rationals with Bland's rule, so every
// pivot sequence terminates. Intended for the small programs this project
// builds (a few thousand rows/columns at most).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace lossylab
