#include "spspca/penalty.hpp"

#include <cmath>

namespace spspca {

std::pair<double, double> theta_domain(const SpectralModel& model) {
  const double d2p = model.d2(model.p() - 1);
  if (d2p >= 1.0)
    throw Error(Errc::empty_domain,
                "smallest eigenvalue " + std::to_string(d2p) +
                    " >= 1; rescale the data (divide X by sqrt(mean d2)) and refit");
  return {d2p, 1.0};
}

double default_theta(const SpectralModel& model) {
  const auto [lo, hi] = theta_domain(model);
  return 0.5 * (lo + hi);
}

VectorXd build_K(const SpectralModel& model, double theta, TailConvention convention) {
  const auto [lo, hi] = theta_domain(model);
  if (!(theta > lo && theta < hi))
    throw Error(Errc::theta_out_of_domain,
                "theta " + std::to_string(theta) + " outside (" + std::to_string(lo) + ", 1)");
  const Index p = model.p();
  VectorXd k(p);
  for (Index i = 0; i < p; ++i) {
    const double d2 = model.d2(i);
    if (i < model.r) {
      k(i) = d2 * (1.0 - theta) / (d2 + theta - 1.0);
    } else if (convention == TailConvention::squared_tail) {
      k(i) = 1.0 / theta - d2;
    } else {
      k(i) = 1.0 / theta - std::sqrt(d2);
    }
    if (!(k(i) > 0.0))
      throw Error(Errc::non_positive_entry,
                  "K(" + std::to_string(i) + ") = " + std::to_string(k(i)) +
                      " not positive; internal consistency failure");
  }
  return k;
}

MatrixXd build_Z(const SpectralModel& model, const VectorXd& k_diag) {
  if (k_diag.size() != model.p())
    throw Error(Errc::dimension_mismatch, "k_diag length does not match model dimension");
  if ((k_diag.array() <= 0.0).any())
    throw Error(Errc::non_positive_k, "build_Z requires strictly positive K entries");
  return k_diag.cwiseSqrt().asDiagonal() * model.V.transpose();
}

MatrixXd uniform_ridge_Z(Index p, double lambda2) {
  if (lambda2 < 0.0) throw Error(Errc::negative_lambda, "lambda2 must be >= 0");
  return std::sqrt(lambda2) * MatrixXd::Identity(p, p);
}

PenaltyOperator make_penalty_operator(const SpectralModel& model, double theta,
                                      TailConvention convention) {
  PenaltyOperator op;
  op.theta = theta;
  op.convention = convention;
  op.k_diag = build_K(model, theta, convention);
  op.Z = build_Z(model, op.k_diag);
  return op;
}

}  // namespace spspca
