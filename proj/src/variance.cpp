#include "spspca/variance.hpp"

#include <cmath>
#include <map>

#include "spspca/spca.hpp"

namespace spspca {

namespace {

// Squared diagonal of the R factor from an unpivoted thin QR of the score
// matrix: column j is credited only the variance orthogonal to columns 0..j-1.
VectorXd ordered_orthogonal_credit(const MatrixXd& scores) {
  const Index k = scores.cols();
  VectorXd credit = VectorXd::Zero(k);
  if (scores.rows() == 0 || k == 0) return credit;
  Eigen::HouseholderQR<MatrixXd> qr(scores);
  const Index m = std::min(scores.rows(), k);
  for (Index j = 0; j < m; ++j) {
    const double rjj = qr.matrixQR()(j, j);
    credit(j) = rjj * rjj;
  }
  return credit;
}

VarianceReport assemble(const VectorXd& credit, double denom, const MatrixXd& V_tilde) {
  VarianceReport report;
  report.total_variance = denom;
  const Index k = credit.size();
  report.per_component_pct.resize(k);
  report.cumulative_pct.resize(k);
  double cum = 0.0;
  for (Index j = 0; j < k; ++j) {
    report.per_component_pct(j) = denom > 0.0 ? 100.0 * credit(j) / denom : 0.0;
    cum += report.per_component_pct(j);
    report.cumulative_pct(j) = cum;
  }
  report.nnz_per_component.resize(k);
  report.total_nnz = 0;
  for (Index j = 0; j < k; ++j) {
    Index nnz = 0;
    for (Index i = 0; i < V_tilde.rows(); ++i)
      if (V_tilde(i, j) != 0.0) ++nnz;
    report.nnz_per_component[j] = nnz;
    report.total_nnz += nnz;
  }
  return report;
}

}  // namespace

VarianceReport adjusted_variance(const DataMatrix& X, const MatrixXd& V_tilde) {
  if (!X.centered) throw Error(Errc::not_centered, "adjusted_variance requires centered data");
  if (V_tilde.rows() != X.p())
    throw Error(Errc::dimension_mismatch, "loading rows must equal variable count");
  const double nm1 = double(X.n() - 1);
  const VectorXd credit = ordered_orthogonal_credit(X.values * V_tilde) / nm1;
  return assemble(credit, X.values.squaredNorm() / nm1, V_tilde);
}

VarianceReport covariance_adjusted_variance(const CovarianceInput& sigma,
                                            const MatrixXd& V_tilde) {
  if (V_tilde.rows() != sigma.p())
    throw Error(Errc::dimension_mismatch, "loading rows must equal covariance dimension");
  const VectorXd credit = ordered_orthogonal_credit(sym_sqrt(sigma) * V_tilde);
  return assemble(credit, sigma.sigma.trace(), V_tilde);
}

ScreeData scree_data(const SpectralModel& model) {
  ScreeData out;
  out.eigenvalues = model.d2;
  out.cumulative_pct.resize(model.d2.size());
  const double total = model.d2.sum();
  double cum = 0.0;
  for (Index i = 0; i < model.d2.size(); ++i) {
    cum += model.d2(i);
    out.cumulative_pct(i) = total > 0.0 ? 100.0 * cum / total : 0.0;
  }
  return out;
}

namespace {

template <typename Input>
std::vector<SweepRow> sweep_impl(const Input& input, const SpcaConfig& tmpl,
                                 const std::vector<double>& targets) {
  if (targets.empty()) throw Error(Errc::invalid_config, "no sweep targets given");
  for (size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] > 0.0 && targets[i] <= 100.0))
      throw Error(Errc::invalid_config, "sweep targets must lie in (0, 100]");
    if (i > 0 && targets[i] <= targets[i - 1])
      throw Error(Errc::invalid_config, "sweep targets must be strictly increasing");
  }
  Index p;
  if constexpr (std::is_same_v<Input, DataMatrix>) {
    p = input.p();
  } else {
    p = input.p();
  }

  struct Eval {
    double cum;
    Index nnz;
  };
  std::map<Index, Eval> cache;
  auto eval = [&](Index c) -> const Eval& {
    auto it = cache.find(c);
    if (it == cache.end()) {
      SpcaConfig cfg = tmpl;
      cfg.lambdas.clear();
      cfg.cardinalities.assign(cfg.k, c);
      const SpcaFit fit = fit_sp_spca(input, cfg);
      Eval e;
      e.cum = fit.cumulative_variance_pct(fit.cumulative_variance_pct.size() - 1);
      e.nnz = 0;
      for (Index nz : fit.nnz_per_component) e.nnz += nz;
      it = cache.emplace(c, e).first;
    }
    return it->second;
  };

  constexpr double kSlack = 1e-7;  // percent units
  std::vector<SweepRow> rows;
  Index lo = 1;
  for (const double target : targets) {
    SweepRow row;
    row.target_pct = target;
    if (eval(p).cum < target - kSlack) {
      // unreachable even fully dense: report the densest fit
      row.cardinality = p;
      row.total_nnz = eval(p).nnz;
      row.achieved_pct = eval(p).cum;
      row.reached = false;
      rows.push_back(row);
      lo = p;
      continue;
    }
    Index l = lo, h = p;
    while (l < h) {
      const Index mid = l + (h - l) / 2;
      if (eval(mid).cum >= target - kSlack)
        h = mid;
      else
        l = mid + 1;
    }
    row.cardinality = h;
    row.total_nnz = eval(h).nnz;
    row.achieved_pct = eval(h).cum;
    row.reached = true;
    rows.push_back(row);
    lo = h;
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> sparsity_sweep(const DataMatrix& X, const SpcaConfig& config_template,
                                     const std::vector<double>& variance_targets) {
  return sweep_impl(X, config_template, variance_targets);
}

std::vector<SweepRow> sparsity_sweep(const CovarianceInput& sigma,
                                     const SpcaConfig& config_template,
                                     const std::vector<double>& variance_targets) {
  return sweep_impl(sigma, config_template, variance_targets);
}

}  // namespace spspca
