#pragma once

#include <vector>

#include "spspca/linalg.hpp"

namespace spspca {

struct SpcaConfig;  // spca.hpp

// Variance accounting for possibly-correlated sparse components: scores are
// orthogonalized in column order (thin QR) so shared variance is credited to
// the earlier component only and the cumulative total cannot double count.
struct VarianceReport {
  VectorXd per_component_pct;
  VectorXd cumulative_pct;
  double total_variance = 0.0;
  std::vector<Index> nnz_per_component;
  Index total_nnz = 0;
};

// Scores T = X V_tilde, QR in column order, R_jj^2 / (n-1) against
// trace(X^T X)/(n-1).
VarianceReport adjusted_variance(const DataMatrix& X, const MatrixXd& V_tilde);

// Same orthogonalization applied to Sigma^{1/2} V_tilde; denominator trace(Sigma).
VarianceReport covariance_adjusted_variance(const CovarianceInput& sigma,
                                            const MatrixXd& V_tilde);

// Descending eigenvalues and their cumulative percentage of the trace.
struct ScreeData {
  VectorXd eigenvalues;
  VectorXd cumulative_pct;
};

ScreeData scree_data(const SpectralModel& model);

struct SweepRow {
  double target_pct = 0.0;
  Index total_nnz = 0;
  double achieved_pct = 0.0;
  Index cardinality = 0;  // uniform per-component level the search settled on
  bool reached = false;
};

// For each variance target (increasing, in (0, 100]): binary-search the
// smallest uniform per-component cardinality whose fit reaches the target
// cumulative adjusted variance. Search ranges are chained so total nnz is
// nondecreasing across targets. Unreached targets report the densest fit.
std::vector<SweepRow> sparsity_sweep(const DataMatrix& X, const SpcaConfig& config_template,
                                     const std::vector<double>& variance_targets);
std::vector<SweepRow> sparsity_sweep(const CovarianceInput& sigma,
                                     const SpcaConfig& config_template,
                                     const std::vector<double>& variance_targets);

}  // namespace spspca
