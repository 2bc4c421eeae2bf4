#include "spspca/linalg.hpp"

#include <cmath>

namespace spspca {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_finite: return "NonFinite";
    case Errc::too_few_rows: return "TooFewRows";
    case Errc::not_centered: return "NotCentered";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::decomposition_failure: return "DecompositionFailure";
    case Errc::too_indefinite: return "TooIndefinite";
    case Errc::empty_domain: return "EmptyDomain";
    case Errc::theta_out_of_domain: return "ThetaOutOfDomain";
    case Errc::non_positive_entry: return "NonPositiveEntry";
    case Errc::non_positive_k: return "NonPositiveK";
    case Errc::negative_lambda: return "NegativeLambda";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::singular_system: return "SingularSystem";
    case Errc::k_too_large: return "KTooLarge";
    case Errc::degenerate_b: return "DegenerateB";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::file_not_found: return "FileNotFound";
    case Errc::ragged_rows: return "RaggedRows";
    case Errc::non_numeric_cell: return "NonNumericCell";
    case Errc::all_columns_dropped: return "AllColumnsDropped";
    case Errc::non_positive_price: return "NonPositivePrice";
    case Errc::write_failure: return "WriteFailure";
  }
  return "UnknownError";
}

void fix_column_signs(MatrixXd& M) {
  for (Index j = 0; j < M.cols(); ++j) {
    Index imax = 0;
    double amax = -1.0;
    for (Index i = 0; i < M.rows(); ++i) {
      const double a = std::abs(M(i, j));
      if (a > amax) {  // strict: ties keep the lowest row index
        amax = a;
        imax = i;
      }
    }
    if (M(imax, j) < 0.0) M.col(j) = -M.col(j);
  }
}

DataMatrix center_columns(const MatrixXd& raw) {
  if (raw.rows() < 2) throw Error(Errc::too_few_rows, "need at least 2 rows to center");
  if (!raw.allFinite()) throw Error(Errc::non_finite, "matrix contains NaN or Inf");
  DataMatrix out;
  out.values = raw.rowwise() - raw.colwise().mean();
  out.centered = true;
  return out;
}

MatrixXd gram(const DataMatrix& X) {
  if (!X.centered) throw Error(Errc::not_centered, "gram requires centered data");
  return X.values.transpose() * X.values;
}

namespace {

void check_symmetric(const MatrixXd& G, double tol, const char* ctx) {
  if (G.rows() != G.cols())
    throw Error(Errc::not_symmetric, std::string(ctx) + ": matrix is not square");
  const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  if ((G - G.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(Errc::not_symmetric, std::string(ctx) + ": asymmetry above tolerance");
}

}  // namespace

SpectralModel spectral_decompose(const MatrixXd& G, SpectralSource source) {
  check_symmetric(G, 1e-8, "spectral_decompose");
  const MatrixXd S = 0.5 * (G + G.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
  if (es.info() != Eigen::Success)
    throw Error(Errc::decomposition_failure, "eigensolver did not converge");

  const Index p = S.rows();
  SpectralModel model;
  model.source = source;
  model.V.resize(p, p);
  model.d2.resize(p);
  // SelfAdjointEigenSolver sorts ascending; reverse to descending.
  for (Index i = 0; i < p; ++i) {
    model.d2(i) = std::max(es.eigenvalues()(p - 1 - i), 0.0);
    model.V.col(i) = es.eigenvectors().col(p - 1 - i);
  }
  fix_column_signs(model.V);
  model.r = 0;
  while (model.r < p && model.d2(model.r) >= 1.0) ++model.r;
  return model;
}

CovarianceInput make_covariance_input(const MatrixXd& sigma) {
  check_symmetric(sigma, 1e-10, "covariance");
  if (!sigma.allFinite()) throw Error(Errc::non_finite, "covariance contains NaN or Inf");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (sigma + sigma.transpose()));
  if (es.info() != Eigen::Success)
    throw Error(Errc::decomposition_failure, "eigensolver did not converge");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (lo < -1e-6 * std::max(hi, 1.0))
    throw Error(Errc::too_indefinite, "covariance has a significantly negative eigenvalue");
  return CovarianceInput{0.5 * (sigma + sigma.transpose())};
}

MatrixXd sym_sqrt(const SpectralModel& model) {
  return model.V * model.d2.cwiseSqrt().asDiagonal() * model.V.transpose();
}

MatrixXd sym_sqrt(const CovarianceInput& sigma) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sigma.sigma);
  if (es.info() != Eigen::Success)
    throw Error(Errc::decomposition_failure, "eigensolver did not converge");
  const double hi = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (es.eigenvalues().minCoeff() < -1e-6 * std::max(hi, 1.0))
    throw Error(Errc::too_indefinite, "matrix too indefinite for a PSD square root");
  const VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  MatrixXd S = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (S + S.transpose());
}

}  // namespace spspca
