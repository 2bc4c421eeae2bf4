#pragma once

#include <utility>

#include "spspca/linalg.hpp"

namespace spspca {

// The printed form of the penalty's tail entries is 1/theta - d (unsquared)
// while the head uses d^2; squared_tail keeps the whole diagonal on the
// eigenvalue (d^2) scale and is the default, linear_tail reproduces the
// printed form. Both are strictly positive on the admissible domain.
enum class TailConvention { squared_tail, linear_tail };

// Diagonal penalty K and the transform Z = sqrt(K) V^T whose quadratic form
// ||Z b||^2 = b^T V K V^T b appears in every B-step.
struct PenaltyOperator {
  VectorXd k_diag;
  double theta = 0.0;
  MatrixXd Z;
  TailConvention convention = TailConvention::squared_tail;
};

// Admissible open interval (d2_p, 1) for theta. Throws EmptyDomain when the
// smallest eigenvalue is >= 1; the caller should rescale the data (divide X by
// sqrt(mean d2)) so the spectrum straddles 1 and refit.
std::pair<double, double> theta_domain(const SpectralModel& model);

// Midpoint of the admissible interval, the default when no theta is given.
double default_theta(const SpectralModel& model);

// K diagonal: d2_i (1-theta) / (d2_i + theta - 1) for i < r, and
// 1/theta - d2_i (squared tail) or 1/theta - d_i (linear tail) for i >= r.
VectorXd build_K(const SpectralModel& model, double theta,
                 TailConvention convention = TailConvention::squared_tail);

// Z = diag(sqrt(k)) V^T. All k entries must be positive.
MatrixXd build_Z(const SpectralModel& model, const VectorXd& k_diag);

// sqrt(lambda2) * I: the uniform ridge of the classic-SPCA baseline.
MatrixXd uniform_ridge_Z(Index p, double lambda2);

PenaltyOperator make_penalty_operator(const SpectralModel& model, double theta,
                                      TailConvention convention = TailConvention::squared_tail);

}  // namespace spspca
