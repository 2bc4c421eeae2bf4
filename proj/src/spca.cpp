#include "spspca/spca.hpp"

#include <cmath>
#include <functional>

#include "spspca/parallel.hpp"

namespace spspca {

MatrixXd init_A(const SpectralModel& model, Index k) {
  if (k < 1 || k > model.p())
    throw Error(Errc::k_too_large, "component count must be in [1, p]");
  return model.V.leftCols(k);
}

BStepResult b_step(const MatrixXd& gram_root, const MatrixXd& Z, const MatrixXd& A,
                   const SparsitySpec& sparsity, const MatrixXd* warm_B,
                   const VectorXd* warm_lambdas, double solver_tol, int solver_max_iter,
                   int threads) {
  const Index p = gram_root.cols();
  const Index k = A.cols();
  const bool lambda_mode = !sparsity.lambdas.empty();
  if (lambda_mode == !sparsity.cardinalities.empty())
    throw Error(Errc::invalid_config, "exactly one of lambdas / cardinalities must be given");
  if ((lambda_mode ? sparsity.lambdas.size() : sparsity.cardinalities.size()) !=
      static_cast<size_t>(k))
    throw Error(Errc::invalid_config, "sparsity spec length must equal component count");
  if (gram_root.rows() != p || A.rows() != p)
    throw Error(Errc::dimension_mismatch, "b_step: inconsistent dimensions");

  BStepResult out;
  out.B = MatrixXd::Zero(p, k);
  out.lambdas = VectorXd::Zero(k);
  const int nthreads = threads > 0 ? threads : max_threads();
  (void)nthreads;

  bool unreachable = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) reduction(|| : unreachable)
#endif
  for (Index j = 0; j < k; ++j) {
    SppcsoProblem problem;
    problem.design = gram_root;
    problem.response = gram_root * A.col(j);
    problem.Z = Z;
    problem.tol = solver_tol;
    problem.max_iter = solver_max_iter;
    const VectorXd warm_col = warm_B != nullptr ? warm_B->col(j) : VectorXd();
    const VectorXd* warm = warm_B != nullptr ? &warm_col : nullptr;
    if (lambda_mode) {
      problem.lambda = sparsity.lambdas[j];
      out.B.col(j) = solve_sppcso(problem, warm).beta;
      out.lambdas(j) = problem.lambda;
    } else {
      std::optional<double> warm_lam;
      if (warm_lambdas != nullptr && (*warm_lambdas)(j) > 0.0) warm_lam = (*warm_lambdas)(j);
      CardinalityResult res = lambda_for_cardinality(problem, sparsity.cardinalities[j],
                                                     std::nullopt, warm, warm_lam);
      out.B.col(j) = res.report.beta;
      out.lambdas(j) = res.lambda;
      unreachable = unreachable || res.unreachable;
    }
  }
  out.any_unreachable = unreachable;
  return out;
}

MatrixXd a_step(const MatrixXd& gram, const MatrixXd& B) {
  if (gram.rows() != gram.cols() || gram.cols() != B.rows())
    throw Error(Errc::dimension_mismatch, "a_step: inconsistent dimensions");
  if (B.isZero(0.0))
    throw Error(Errc::degenerate_b, "a_step needs a nonzero B");
  const MatrixXd GB = gram * B;
  Eigen::JacobiSVD<MatrixXd> svd(GB, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // Singular values at numerical zero still come with orthonormal U/V columns
  // (the SVD's null-space completion), so A^T A = I holds for collapsed
  // components as well.
  return svd.matrixU() * svd.matrixV().transpose();
}

MatrixXd normalize_loadings(const MatrixXd& B) {
  MatrixXd V = B;
  for (Index j = 0; j < V.cols(); ++j) {
    const double norm = V.col(j).norm();
    if (norm > 0.0) V.col(j) /= norm;
  }
  fix_column_signs(V);
  return V;
}

namespace {

void validate_config(const SpcaConfig& config, Index p) {
  if (config.k < 1 || config.k > p)
    throw Error(Errc::k_too_large, "k must be in [1, p]");
  const bool has_lambda = !config.lambdas.empty();
  const bool has_card = !config.cardinalities.empty();
  if (has_lambda == has_card)
    throw Error(Errc::invalid_config, "exactly one of lambdas / cardinalities must be set");
  const size_t len = has_lambda ? config.lambdas.size() : config.cardinalities.size();
  if (len != static_cast<size_t>(config.k))
    throw Error(Errc::invalid_config, "sparsity list length must equal k");
  if (!(config.outer_tol > 0.0) || config.outer_max_iter < 1)
    throw Error(Errc::invalid_config, "outer tolerance/iteration cap invalid");
}

SpcaFit fit_core(const MatrixXd& G, const SpectralModel& model, const SpcaConfig& config,
                 bool baseline,
                 const std::function<VarianceReport(const MatrixXd&)>& variance_of) {
  const Index p = model.p();
  validate_config(config, p);

  SpcaFit fit;
  MatrixXd Z;
  if (baseline) {
    const double lambda2 = config.baseline_lambda2.value_or(1e-6 * G.trace() / double(p));
    Z = uniform_ridge_Z(p, lambda2);
    fit.theta = 0.0;
  } else {
    fit.theta = config.theta.value_or(default_theta(model));
    Z = build_Z(model, build_K(model, fit.theta, config.tail));
  }
  const MatrixXd gram_root = sym_sqrt(model);

  SparsitySpec sparsity{config.lambdas, config.cardinalities};
  MatrixXd A = init_A(model, config.k);
  MatrixXd B = MatrixXd::Zero(p, config.k);
  VectorXd lambdas = VectorXd::Zero(config.k);
  bool have_warm = false;

  for (int iter = 1; iter <= config.outer_max_iter; ++iter) {
    fit.outer_iterations = iter;
    const MatrixXd B_old = B;
    BStepResult step = b_step(gram_root, Z, A, sparsity, have_warm ? &B : nullptr,
                              have_warm ? &lambdas : nullptr, config.solver_tol,
                              config.solver_max_iter, config.threads);
    B = step.B;
    lambdas = step.lambdas;
    have_warm = true;
    if (!B.isZero(0.0)) {
      A = a_step(G, B);
      const double ortho_err =
          (A.transpose() * A - MatrixXd::Identity(config.k, config.k)).norm();
      fit.max_a_orthonormality_error = std::max(fit.max_a_orthonormality_error, ortho_err);
    }
    const double rel = (B - B_old).norm() / std::max(1.0, B_old.norm());
    if (rel < config.outer_tol) {
      fit.converged = true;
      break;
    }
  }

  fit.A = A;
  fit.B = B;
  fit.lambdas = lambdas;
  fit.V_tilde = normalize_loadings(B);

  VarianceReport report = variance_of(fit.V_tilde);
  fit.adjusted_variance_pct = report.per_component_pct;
  fit.cumulative_variance_pct = report.cumulative_pct;
  fit.nnz_per_component = report.nnz_per_component;
  return fit;
}

}  // namespace

SpcaFit fit_sp_spca(const DataMatrix& data, const SpcaConfig& config) {
  const MatrixXd G = gram(data);
  const SpectralModel model = spectral_decompose(G, SpectralSource::from_data);
  return fit_core(G, model, config, config.baseline_lambda2.has_value(),
                  [&](const MatrixXd& V_tilde) { return adjusted_variance(data, V_tilde); });
}

SpcaFit fit_sp_spca(const CovarianceInput& sigma, const SpcaConfig& config) {
  const SpectralModel model = spectral_decompose(sigma.sigma, SpectralSource::from_covariance);
  return fit_core(sigma.sigma, model, config, config.baseline_lambda2.has_value(),
                  [&](const MatrixXd& V_tilde) {
                    return covariance_adjusted_variance(sigma, V_tilde);
                  });
}

SpcaFit fit_spca_baseline(const DataMatrix& data, const SpcaConfig& config) {
  const MatrixXd G = gram(data);
  const SpectralModel model = spectral_decompose(G, SpectralSource::from_data);
  return fit_core(G, model, config, true,
                  [&](const MatrixXd& V_tilde) { return adjusted_variance(data, V_tilde); });
}

SpcaFit fit_spca_baseline(const CovarianceInput& sigma, const SpcaConfig& config) {
  const SpectralModel model = spectral_decompose(sigma.sigma, SpectralSource::from_covariance);
  return fit_core(sigma.sigma, model, config, true,
                  [&](const MatrixXd& V_tilde) {
                    return covariance_adjusted_variance(sigma, V_tilde);
                  });
}

namespace {

template <typename Input>
double grid_search_theta(const Input& input, const SpcaConfig& config) {
  // 9 evenly spaced interior points of the admissible domain
  const MatrixXd* Gp = nullptr;
  MatrixXd G;
  if constexpr (std::is_same_v<Input, DataMatrix>) {
    G = gram(input);
    Gp = &G;
  } else {
    Gp = &input.sigma;
  }
  const SpectralModel model = spectral_decompose(*Gp);
  const auto [lo, hi] = theta_domain(model);
  double best_theta = default_theta(model);
  double best_cum = -1.0;
  for (int i = 1; i <= 9; ++i) {
    SpcaConfig trial = config;
    trial.theta = lo + (hi - lo) * i / 10.0;
    trial.baseline_lambda2.reset();
    const SpcaFit fit = fit_sp_spca(input, trial);
    const double cum = fit.cumulative_variance_pct.size() > 0
                           ? fit.cumulative_variance_pct(fit.cumulative_variance_pct.size() - 1)
                           : 0.0;
    if (cum > best_cum + 1e-12) {
      best_cum = cum;
      best_theta = *trial.theta;
    }
  }
  return best_theta;
}

}  // namespace

double select_theta_by_grid(const DataMatrix& data, const SpcaConfig& config) {
  return grid_search_theta(data, config);
}

double select_theta_by_grid(const CovarianceInput& sigma, const SpcaConfig& config) {
  return grid_search_theta(sigma, config);
}

}  // namespace spspca
