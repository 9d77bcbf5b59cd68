#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mklab/ensembles.hpp"
#include "mklab/transforms.hpp"

namespace mklab {

/// Welford accumulator; merge() combines two disjoint sample sets.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const noexcept;
  double standard_error() const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// (mean - prediction) / stderr, with 0/0 read as 0.
double z_score(double mean, double prediction, double stderr_value);

struct MomentStatistics {
  int k = 0;
  double mean = 0.0;           ///< E[M_k(kappa)]
  double variance = 0.0;
  double stderr_mean = 0.0;
  double mean_square = 0.0;    ///< E[M_k(kappa)^2]
  double stderr_square = 0.0;
  double prediction_l1 = 0.0;
  double prediction_l2 = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
};

struct ExperimentResult {
  EnsembleSpec ensemble;
  int k_max = 0;
  int trials = 0;
  std::vector<MomentStatistics> per_k;
  std::size_t samples_checked = 0;
  std::size_t interlacing_violations = 0;
  /// max over samples of |M_1(kappa) - X_NN|.
  double max_trace_defect = 0.0;
};

inline constexpr int kMaxExperimentOrder = 8;
inline constexpr int kMinTrials = 30;

/// Limiting free cumulants of the ensemble: semicircle for GUE, all equal
/// to the ratio for Wishart, those of the fixed spectrum's empirical
/// distribution otherwise.
FreeCumulantSequence<double> limit_cumulants(const EnsembleSpec& spec, int order);

/// Threads to use: `requested` if positive, else hardware concurrency;
/// capped by the MKLAB_THREADS environment variable when set.
int resolve_thread_count(int requested = 0);

/// Samples T matrices, checks interlacing on every one and aggregates
/// moments of the empirical Rayleigh measure for k = 1..k_max, attaching
/// the ell = 1, 2 limit predictions. Throws InterlacingError on the first
/// violating sample.
ExperimentResult run_concentration_experiment(const EnsembleSpec& spec, int k_max, int trials,
                                              int threads = 0);

struct SecondMomentEstimate {
  int k = 0;
  double mean = 0.0;
  double stderr_value = 0.0;
  double prediction = 0.0;
  double z = 0.0;
};

/// E[M_k(kappa)^2] against the ell = 2 prediction.
SecondMomentEstimate estimate_second_moment(const EnsembleSpec& spec, int k, int trials,
                                            int threads = 0);

/// Columns k,mean,var,stderr,pred_l1,pred_l2,z1,z2, preceded by "# key=value"
/// lines holding the resolved configuration.
std::string to_csv(const ExperimentResult& result, const nlohmann::json& config);

nlohmann::json to_json(const ExperimentResult& result, const nlohmann::json& config);

}  // namespace mklab
