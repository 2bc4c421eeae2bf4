#include "spspca/reference.hpp"

#include <cmath>

namespace spspca::reference {

SolverReport solve_sppcso(const SppcsoProblem& problem, const VectorXd* warm_start) {
  if (problem.lambda < 0.0) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  auto [Xa, ya] = augment(problem);
  const Index p = Xa.cols();

  SolverReport report;
  report.beta = VectorXd::Zero(p);
  if (warm_start != nullptr) report.beta = *warm_start;

  for (int sweep = 1; sweep <= problem.max_iter; ++sweep) {
    double delta = 0.0;
    for (Index j = 0; j < p; ++j) {
      const double cn = Xa.col(j).squaredNorm();
      if (cn <= 0.0) continue;
      VectorXd partial = report.beta;
      partial(j) = 0.0;
      const double rho = Xa.col(j).dot(ya - Xa * partial);
      const double bnew = soft_threshold(rho, 0.5 * problem.lambda) / cn;
      delta = std::max(delta, std::abs(bnew - report.beta(j)));
      report.beta(j) = bnew;
    }
    report.iterations = sweep;
    report.final_delta = delta;
    if (problem.track_objective)
      report.objective_trace.push_back((ya - Xa * report.beta).squaredNorm() +
                                       problem.lambda * report.beta.lpNorm<1>());
    if (delta < problem.tol) {
      report.converged = true;
      break;
    }
  }
  for (Index j = 0; j < p; ++j)
    if (report.beta(j) != 0.0) report.active_set.push_back(j);
  return report;
}

}  // namespace spspca::reference
