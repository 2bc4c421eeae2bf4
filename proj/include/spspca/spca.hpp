#pragma once

#include <optional>
#include <vector>

#include "spspca/penalty.hpp"
#include "spspca/solver.hpp"
#include "spspca/variance.hpp"

namespace spspca {

// Exactly one of `lambdas` / `cardinalities` must be set (length k). When
// `baseline_lambda2` is present the uniform ridge replaces the adaptive
// penalty (classic-SPCA mode) and theta is ignored.
struct SpcaConfig {
  int k = 2;
  std::optional<double> theta;
  std::vector<double> lambdas;
  std::vector<Index> cardinalities;
  double outer_tol = 1e-6;
  int outer_max_iter = 200;
  std::optional<double> baseline_lambda2;
  TailConvention tail = TailConvention::squared_tail;
  double solver_tol = 1e-4;
  int solver_max_iter = 10000;
  int threads = 0;  // 0: use max_threads()
};

struct SpcaFit {
  MatrixXd A;        // p x k orthonormal alignment
  MatrixXd B;        // p x k sparse loadings
  MatrixXd V_tilde;  // p x k unit-norm (or zero) normalized loadings
  VectorXd lambdas;  // realized per-component l1 penalties
  VectorXd adjusted_variance_pct;
  VectorXd cumulative_variance_pct;
  std::vector<Index> nnz_per_component;
  int outer_iterations = 0;
  bool converged = false;
  double theta = 0.0;  // 0 in baseline mode
  double max_a_orthonormality_error = 0.0;  // max ||A^T A - I||_F over all A-steps
};

// First k sign-fixed eigenvector columns.
MatrixXd init_A(const SpectralModel& model, Index k);

struct SparsitySpec {
  std::vector<double> lambdas;
  std::vector<Index> cardinalities;
};

struct BStepResult {
  MatrixXd B;
  VectorXd lambdas;
  bool any_unreachable = false;
};

// Solves the k per-component SPPCSO problems (design = gram_root, response =
// gram_root * A_j). Cardinality mode runs lambda_for_cardinality per column.
// Columns are independent and solved in parallel, merged by index.
BStepResult b_step(const MatrixXd& gram_root, const MatrixXd& Z, const MatrixXd& A,
                   const SparsitySpec& sparsity, const MatrixXd* warm_B = nullptr,
                   const VectorXd* warm_lambdas = nullptr, double solver_tol = 1e-4,
                   int solver_max_iter = 10000, int threads = 0);

// Procrustes update: thin SVD of gram * B = U D W^T, returns U W^T, the
// orthonormal A maximizing trace(A^T gram B). Throws DegenerateB when B is
// entirely zero; rank-deficient gram*B is completed orthonormally by the SVD.
MatrixXd a_step(const MatrixXd& gram, const MatrixXd& B);

// Unit L2 columns with the sign convention; zero columns stay zero.
MatrixXd normalize_loadings(const MatrixXd& B);

SpcaFit fit_sp_spca(const DataMatrix& data, const SpcaConfig& config);
SpcaFit fit_sp_spca(const CovarianceInput& sigma, const SpcaConfig& config);

// Classic-SPCA comparison baseline: identical alternation with the uniform
// ridge Z = sqrt(lambda2) I. Default lambda2 = 1e-6 trace(gram)/p.
SpcaFit fit_spca_baseline(const DataMatrix& data, const SpcaConfig& config);
SpcaFit fit_spca_baseline(const CovarianceInput& sigma, const SpcaConfig& config);

// Grid search over 9 evenly spaced interior thetas, keeping the one whose fit
// has maximal cumulative adjusted variance at the configured sparsity.
double select_theta_by_grid(const DataMatrix& data, const SpcaConfig& config);
double select_theta_by_grid(const CovarianceInput& sigma, const SpcaConfig& config);

}  // namespace spspca
