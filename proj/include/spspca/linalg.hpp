#pragma once

#include <Eigen/Dense>

#include "spspca/error.hpp"

namespace spspca {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Column-centered data matrix. `centered` is set by center_columns; operations
// that require centered input check the flag, not the column means.
struct DataMatrix {
  MatrixXd values;
  bool centered = false;

  Index n() const { return values.rows(); }
  Index p() const { return values.cols(); }
};

// Symmetric positive-semidefinite covariance. Validated on construction via
// make_covariance_input.
struct CovarianceInput {
  MatrixXd sigma;

  Index p() const { return sigma.rows(); }
};

enum class SpectralSource { from_data, from_covariance };

// Eigendecomposition of a Gram (or covariance) matrix G = V diag(d2) V^T with
// d2 sorted descending, a deterministic column-sign convention, and the split
// index r = #{i : d2_i >= 1} separating the two penalty regimes.
struct SpectralModel {
  MatrixXd V;
  VectorXd d2;
  Index r = 0;
  SpectralSource source = SpectralSource::from_data;

  Index p() const { return V.rows(); }
};

// Subtracts per-column means. Throws on NaN/Inf entries or fewer than 2 rows.
DataMatrix center_columns(const MatrixXd& raw);

// X^T X of a centered matrix.
MatrixXd gram(const DataMatrix& X);

// Symmetry check + eigendecomposition + descending sort + sign fix. Negative
// roundoff eigenvalues are clamped to zero.
SpectralModel spectral_decompose(const MatrixXd& G,
                                 SpectralSource source = SpectralSource::from_data);

// Validates symmetry/PSD-ness of sigma (1e-10 tolerances).
CovarianceInput make_covariance_input(const MatrixXd& sigma);

// Symmetric PSD square root, eigenvalues clamped at zero before rooting.
MatrixXd sym_sqrt(const CovarianceInput& sigma);

// Same square root computed from an existing decomposition (used by the fit
// pipeline, which already holds the SpectralModel of its Gram).
MatrixXd sym_sqrt(const SpectralModel& model);

// Flips each column so its largest-magnitude entry is positive (ties broken by
// lowest row index). Applied to eigenvectors and normalized loadings so that
// repeated runs and cross-method comparisons are sign-stable.
void fix_column_signs(MatrixXd& M);

}  // namespace spspca
