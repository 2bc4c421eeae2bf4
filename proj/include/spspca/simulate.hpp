#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spspca/linalg.hpp"

namespace spspca {

// Latent-factor simulation sizes. `s[j]` structural variables load on factor j
// alone; `m` mixed variables load on 2-3 factors each and act as noise for
// support recovery. sum(s) + m must equal p (resolve_sizes adjusts the last
// block and reports the change).
struct SimSpec {
  Index n = 100;
  Index p = 300;
  Index d = 5;
  std::vector<Index> s;
  Index m = 50;
  std::uint64_t seed = 0;
  double noise_sd = 1.0;
};

// Ten observed variables driven by V1 ~ N(0,50), V2 ~ N(0,300) and
// V3 = -0.3 V1 + 0.925 V2 + eps: X1..4 = V1 + noise, X5..8 = V2 + noise,
// X9,10 = V3 + noise. Columns are centered.
DataMatrix gen_lowdim(Index n, std::uint64_t seed);

// The exact population covariance implied by the construction above.
CovarianceInput lowdim_population_covariance();

struct HighdimData {
  DataMatrix X;
  // p x d: true structural memberships; mixed variables have all-false rows.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> ideal_support;
  SimSpec resolved;       // spec with s adjusted so sum(s) + m = p
  bool sizes_adjusted = false;
};

HighdimData gen_highdim(const SimSpec& spec);

// Fills spec.s by replicating a scalar block size d times, absorbing any
// remainder into the last block.
SimSpec resolve_sizes(Index n, Index p, Index d, Index s_scalar, Index m, std::uint64_t seed);

enum class Method { sp_spca, baseline_spca };

std::string method_name(Method m);

struct CaseResult {
  int case_id = 0;
  std::string param_name;   // varying parameter of the case ("p", "m", "d")
  double param_value = 0.0;
  Method method = Method::sp_spca;
  std::vector<double> rep_cumulative;  // cumulative adjusted variance per replication
  double mean_cumulative = 0.0;
  double support_score = 0.0;  // mean fraction of ideal-support entries matched
  int replications = 0;
  Index cardinality = 0;  // per-component nonzero budget used
  bool sizes_adjusted = false;
};

struct CaseOverrides {
  std::optional<Index> n;
  std::optional<Index> cardinality;
  // restricts the case's parameter grid to these values (empty: full grid)
  std::vector<Index> grid;
};

// Runs one of the four experiment protocols: Case 1 fixes (n=100, p=300, d=5,
// s=50, m=50); Case 2 sweeps p in {150..900}; Case 3 sweeps m in {10,50,100,
// 150}; Case 4 sweeps d in {2,5,10}. Replication r draws its data from seed
// master_seed XOR r and fits each method on the sample covariance with the
// per-component cardinality budget (s of the point unless overridden).
// Replications run in parallel and merge by index, so results do not depend
// on the thread count.
std::vector<CaseResult> run_case(int case_id, const CaseOverrides& overrides, int reps,
                                 const std::vector<Method>& methods, std::uint64_t master_seed,
                                 int threads = 0);

// Greedy component-to-factor matching by absolute loading mass, then the
// fraction of ideal-support entries recovered across matched pairs.
double support_recovery_score(
    const MatrixXd& V_tilde,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& ideal_support);

}  // namespace spspca
