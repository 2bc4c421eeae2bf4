#include "spspca/solver.hpp"

#include <algorithm>
#include <cmath>

namespace spspca {

double soft_threshold(double r, double lambda) {
  if (lambda < 0.0) throw Error(Errc::negative_lambda, "soft_threshold needs lambda >= 0");
  const double mag = std::abs(r) - lambda;
  return mag > 0.0 ? (r > 0.0 ? mag : -mag) : 0.0;
}

std::pair<MatrixXd, VectorXd> augment(const SppcsoProblem& problem) {
  const Index n = problem.design.rows();
  const Index p = problem.design.cols();
  if (problem.Z.cols() != p)
    throw Error(Errc::dimension_mismatch, "Z column count does not match design");
  if (problem.response.size() != n)
    throw Error(Errc::dimension_mismatch, "response length does not match design rows");
  MatrixXd Xa(n + problem.Z.rows(), p);
  Xa.topRows(n) = problem.design;
  Xa.bottomRows(problem.Z.rows()) = problem.Z;
  VectorXd ya = VectorXd::Zero(n + problem.Z.rows());
  ya.head(n) = problem.response;
  return {std::move(Xa), std::move(ya)};
}

namespace {

double exact_objective(const MatrixXd& Xa, const VectorXd& ya, const VectorXd& beta,
                       double lambda) {
  return (ya - Xa * beta).squaredNorm() + lambda * beta.lpNorm<1>();
}

}  // namespace

SolverReport solve_sppcso(const SppcsoProblem& problem, const VectorXd* warm_start) {
  if (problem.lambda < 0.0) throw Error(Errc::negative_lambda, "lambda must be >= 0");
  if (!(problem.tol > 0.0)) throw Error(Errc::invalid_config, "tol must be > 0");
  auto [Xa, ya] = augment(problem);
  const Index p = Xa.cols();
  const double half_lambda = 0.5 * problem.lambda;

  SolverReport report;
  report.beta = VectorXd::Zero(p);
  if (warm_start != nullptr) {
    if (warm_start->size() != p)
      throw Error(Errc::dimension_mismatch, "warm start length does not match design");
    report.beta = *warm_start;
  }

  const VectorXd colnorm2 = Xa.colwise().squaredNorm();
  VectorXd resid = ya - Xa * report.beta;

  for (int sweep = 1; sweep <= problem.max_iter; ++sweep) {
    if (sweep % 50 == 0) resid = ya - Xa * report.beta;  // drift control
    double delta = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (colnorm2(j) <= 0.0) continue;
      const double bj = report.beta(j);
      const double rho = Xa.col(j).dot(resid) + colnorm2(j) * bj;
      const double bnew = soft_threshold(rho, half_lambda) / colnorm2(j);
      const double d = bnew - bj;
      if (d != 0.0) {
        resid.noalias() -= d * Xa.col(j);
        report.beta(j) = bnew;
        delta = std::max(delta, std::abs(d));
      }
    }
    report.iterations = sweep;
    report.final_delta = delta;
    if (problem.track_objective)
      report.objective_trace.push_back(exact_objective(Xa, ya, report.beta, problem.lambda));
    if (delta < problem.tol) {
      report.converged = true;
      break;
    }
  }
  for (Index j = 0; j < p; ++j)
    if (report.beta(j) != 0.0) report.active_set.push_back(j);
  return report;
}

VectorXd closed_form_ridge(const SpectralModel& model, const VectorXd& k_diag,
                           const MatrixXd& gram, const VectorXd& alpha) {
  const Index p = model.p();
  if (k_diag.size() != p || gram.rows() != p || gram.cols() != p || alpha.size() != p)
    throw Error(Errc::dimension_mismatch, "closed_form_ridge: inconsistent dimensions");
  VectorXd ratio(p);
  const double scale = (model.d2 + k_diag).maxCoeff();
  for (Index i = 0; i < p; ++i) {
    const double denom = model.d2(i) + k_diag(i);
    if (denom <= 1e-14 * std::max(scale, 1.0))
      throw Error(Errc::singular_system, "gram + V K V^T is numerically singular");
    ratio(i) = model.d2(i) / denom;
  }
  return model.V * (ratio.asDiagonal() * (model.V.transpose() * alpha));
}

CardinalityResult lambda_for_cardinality(const SppcsoProblem& problem, Index target_nnz,
                                         std::optional<double> lambda_hi,
                                         const VectorXd* warm_start,
                                         std::optional<double> warm_lambda) {
  const Index p = problem.design.cols();
  if (target_nnz < 0 || target_nnz > p)
    throw Error(Errc::invalid_config, "target cardinality out of [0, p]");

  SppcsoProblem work = problem;
  const double lam_max =
      lambda_hi.value_or(2.0 * (problem.design.transpose() * problem.response)
                                   .cwiseAbs()
                                   .maxCoeff());

  CardinalityResult out;
  auto solve_at = [&](double lam, const VectorXd* warm) {
    work.lambda = lam;
    return solve_sppcso(work, warm);
  };
  auto nnz_of = [](const SolverReport& r) { return static_cast<Index>(r.active_set.size()); };

  if (target_nnz == 0) {
    out.lambda = lam_max;
    out.report = solve_at(lam_max, warm_start);
    out.exact = nnz_of(out.report) == 0;
    return out;
  }

  double lo = 0.0, hi = lam_max;
  bool have_best = false, have_exact = false;
  double best_lam = lam_max, exact_lam = 0.0;
  SolverReport best, exact_rep;
  Index best_nnz = -1;
  VectorXd warm = warm_start != nullptr ? *warm_start : VectorXd::Zero(p);

  auto consider = [&](double lam, SolverReport&& rep) {
    const Index nnz = nnz_of(rep);
    warm = rep.beta;
    if (nnz > target_nnz) {
      lo = std::max(lo, lam);
      return false;
    }
    hi = std::min(hi, lam);
    if (nnz == target_nnz && (!have_exact || lam > exact_lam)) {
      have_exact = true;
      exact_lam = lam;
      exact_rep = rep;
    }
    // best-so-far feasible: most nonzeros, then least shrinkage
    if (!have_best || nnz > best_nnz || (nnz == best_nnz && lam < best_lam)) {
      have_best = true;
      best_nnz = nnz;
      best_lam = lam;
      best = std::move(rep);
    }
    return true;
  };

  if (warm_lambda && *warm_lambda > 0.0 && *warm_lambda < lam_max) {
    SolverReport rep = solve_at(*warm_lambda, &warm);
    const Index nnz = nnz_of(rep);
    consider(*warm_lambda, std::move(rep));
    if (nnz == target_nnz) {  // warm lambda still hits the target: done
      out.lambda = exact_lam;
      out.report = exact_rep;
      out.exact = true;
      return out;
    }
  }

  bool saw_over = lo > 0.0;
  while (hi - lo > 1e-3 * lam_max) {
    const double mid = 0.5 * (lo + hi);
    const bool feasible = consider(mid, solve_at(mid, &warm));
    saw_over = saw_over || !feasible;
  }

  if (have_exact) {
    out.lambda = exact_lam;
    out.report = exact_rep;
    out.exact = true;
    return out;
  }
  if (!saw_over) {
    // every probe was below target: only lambda = 0 can tell reachability
    SolverReport rep0 = solve_at(0.0, &warm);
    const Index nnz0 = nnz_of(rep0);
    if (nnz0 <= target_nnz) {
      out.lambda = 0.0;
      out.exact = nnz0 == target_nnz;
      out.unreachable = nnz0 < target_nnz;
      out.report = std::move(rep0);
      return out;
    }
  }
  out.lambda = best_lam;
  out.report = std::move(best);
  return out;
}

}  // namespace spspca
