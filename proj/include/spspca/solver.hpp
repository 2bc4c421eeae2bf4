#pragma once

#include <optional>
#include <vector>

#include "spspca/linalg.hpp"

namespace spspca {

// One SPPCSO instance: min ||y - X b||^2 + ||Z b||^2 + lambda ||b||_1.
// `design` is either the data matrix itself or a symmetric Gram/covariance
// square root; the solver only sees the stacked augmented pair.
struct SppcsoProblem {
  MatrixXd design;     // n x p
  VectorXd response;   // n
  MatrixXd Z;          // p x p
  double lambda = 0.0;
  double tol = 1e-4;   // max-abs coefficient change per sweep
  int max_iter = 10000;
  bool track_objective = false;  // record the exact objective after each sweep
};

struct SolverReport {
  VectorXd beta;
  int iterations = 0;
  bool converged = false;
  double final_delta = 0.0;
  std::vector<Index> active_set;
  std::vector<double> objective_trace;  // filled when track_objective
};

// sign(r) * max(|r| - lambda, 0)
double soft_threshold(double r, double lambda);

// Stacks [X; Z] and [y; 0] so that ||y~ - X~ b||^2 = ||y - X b||^2 + ||Z b||^2.
std::pair<MatrixXd, VectorXd> augment(const SppcsoProblem& problem);

// Cyclic coordinate descent on the augmented lasso, deterministic in the
// coordinate order j = 0..p-1. Residuals are maintained in place and rebuilt
// every 50 sweeps to bound drift.
SolverReport solve_sppcso(const SppcsoProblem& problem,
                          const VectorXd* warm_start = nullptr);

// Exact lambda = 0 solution (X^T X + V K V^T)^{-1} X^T X alpha evaluated in
// the eigenbasis: V diag(d2 / (d2 + k)) V^T alpha.
VectorXd closed_form_ridge(const SpectralModel& model, const VectorXd& k_diag,
                           const MatrixXd& gram, const VectorXd& alpha);

struct CardinalityResult {
  double lambda = 0.0;
  SolverReport report;
  bool exact = false;        // solution has exactly target_nnz nonzeros
  bool unreachable = false;  // even lambda = 0 has fewer nonzeros than the target
};

// Bisection on lambda in [0, lambda_max], lambda_max = 2 max_j |X~_j^T y~|,
// stopping at relative width 1e-3. Prefers lambdas whose solution hits the
// target cardinality exactly (keeping the largest such lambda); otherwise
// returns the best feasible probe (nnz <= target, nnz maximal, lambda
// smallest). `warm` seeds both the bisection bracket and the inner solves.
CardinalityResult lambda_for_cardinality(const SppcsoProblem& problem, Index target_nnz,
                                         std::optional<double> lambda_hi = std::nullopt,
                                         const VectorXd* warm_start = nullptr,
                                         std::optional<double> warm_lambda = std::nullopt);

}  // namespace spspca
