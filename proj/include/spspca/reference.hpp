#pragma once

#include "spspca/solver.hpp"

namespace spspca::reference {

// Textbook coordinate descent on the augmented lasso: no residual maintenance,
// every partial residual recomputed from scratch. O(n p) per coordinate where
// the production kernel is O(n). Kept as the ground truth the optimized solver
// and the benchmark are measured against.
SolverReport solve_sppcso(const SppcsoProblem& problem, const VectorXd* warm_start = nullptr);

}  // namespace spspca::reference
