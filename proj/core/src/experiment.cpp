#include "mklab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "mklab/errors.hpp"

namespace mklab {

void RunningStats::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count_ + other.count_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * static_cast<double>(other.count_) / total;
  m2_ += other.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(other.count_) / total;
  count_ += other.count_;
}

double RunningStats::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::standard_error() const noexcept {
  return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

double z_score(double mean, double prediction, double stderr_value) {
  const double diff = mean - prediction;
  if (stderr_value > 0.0) return diff / stderr_value;
  if (diff == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

FreeCumulantSequence<double> limit_cumulants(const EnsembleSpec& spec, int order) {
  std::vector<double> fc(static_cast<std::size_t>(order), 0.0);
  switch (spec.family) {
    case EnsembleFamily::gue:
      if (order >= 2) fc[1] = 1.0;
      break;
    case EnsembleFamily::wishart:
      std::fill(fc.begin(), fc.end(), spec.ratio);
      break;
    case EnsembleFamily::fixed_spectrum: {
      std::vector<double> moments(static_cast<std::size_t>(order), 0.0);
      for (double s : spec.spectrum) {
        double power = 1.0;
        for (int k = 1; k <= order; ++k) {
          power *= s;
          moments[static_cast<std::size_t>(k - 1)] += power;
        }
      }
      for (double& m : moments) m /= static_cast<double>(spec.spectrum.size());
      return moments_to_cumulants(MomentSequence<double>(SequenceKind::transition, std::move(moments)));
    }
  }
  return FreeCumulantSequence<double>(std::move(fc));
}

int resolve_thread_count(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);
  if (const char* cap = std::getenv("MKLAB_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (end != cap && value > 0) threads = std::min(threads, static_cast<int>(value));
  }
  return threads;
}

namespace {

struct TrialOutcome {
  std::vector<double> moments;
  double trace_defect = 0.0;
};

std::vector<TrialOutcome> run_trials(const EnsembleSpec& spec, int order, int trials, int threads) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));

  auto worker = [&](int id) {
    try {
      for (int t = id; t < trials; t += threads) {
        const auto sample = draw_spectrum_sample(spec, static_cast<std::uint64_t>(t));
        if (!sample.interlacing_ok) {
          std::ostringstream msg;
          msg << "interlacing violated in trial " << t << " (seed " << sample.seed_used << ", ensemble "
              << to_string(spec.family) << ", N=" << spec.n << ")";
          throw InterlacingError(msg.str());
        }
        auto kappa = rayleigh_moments(sample.lambda, sample.lambda_tilde, order);
        auto& out = outcomes[static_cast<std::size_t>(t)];
        out.trace_defect = std::abs(kappa[1] - sample.deleted_diagonal);
        out.moments = kappa.values();
      }
    } catch (...) {
      errors[static_cast<std::size_t>(id)] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

void check_experiment_args(const EnsembleSpec& spec, int k_max, int trials) {
  spec.validate();
  if (k_max < 1 || k_max > kMaxExperimentOrder) {
    throw SizeLimitError("experiment: k_max must lie in [1," + std::to_string(kMaxExperimentOrder) + "]");
  }
  if (trials < kMinTrials) {
    throw std::invalid_argument("experiment: need at least " + std::to_string(kMinTrials) + " trials");
  }
}

}  // namespace

ExperimentResult run_concentration_experiment(const EnsembleSpec& spec, int k_max, int trials,
                                              int threads) {
  check_experiment_args(spec, k_max, trials);
  threads = std::min(resolve_thread_count(threads), trials);
  const auto outcomes = run_trials(spec, k_max, trials, threads);

  ExperimentResult result;
  result.ensemble = spec;
  result.k_max = k_max;
  result.trials = trials;
  result.samples_checked = outcomes.size();

  std::vector<RunningStats> first(static_cast<std::size_t>(k_max));
  std::vector<RunningStats> second(static_cast<std::size_t>(k_max));
  for (const auto& o : outcomes) {
    result.max_trace_defect = std::max(result.max_trace_defect, o.trace_defect);
    for (std::size_t i = 0; i < first.size(); ++i) {
      first[i].add(o.moments[i]);
      second[i].add(o.moments[i] * o.moments[i]);
    }
  }

  const auto fc = limit_cumulants(spec, k_max);
  for (int k = 1; k <= k_max; ++k) {
    const auto& s1 = first[static_cast<std::size_t>(k - 1)];
    const auto& s2 = second[static_cast<std::size_t>(k - 1)];
    MomentStatistics stats;
    stats.k = k;
    stats.mean = s1.mean();
    stats.variance = s1.variance();
    stats.stderr_mean = s1.standard_error();
    stats.mean_square = s2.mean();
    stats.stderr_square = s2.standard_error();
    stats.prediction_l1 = thm31_prediction(fc, k, 1);
    stats.prediction_l2 = thm31_prediction(fc, k, 2);
    stats.z1 = z_score(stats.mean, stats.prediction_l1, stats.stderr_mean);
    stats.z2 = z_score(stats.mean_square, stats.prediction_l2, stats.stderr_square);
    result.per_k.push_back(stats);
  }
  return result;
}

SecondMomentEstimate estimate_second_moment(const EnsembleSpec& spec, int k, int trials, int threads) {
  const auto result = run_concentration_experiment(spec, k, trials, threads);
  const auto& stats = result.per_k.back();
  return {k, stats.mean_square, stats.stderr_square, stats.prediction_l2, stats.z2};
}

std::string to_csv(const ExperimentResult& result, const nlohmann::json& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config.items()) out << "# " << key << '=' << value.dump() << '\n';
  out << "k,mean,var,stderr,pred_l1,pred_l2,z1,z2\n";
  out << std::setprecision(17);
  for (const auto& s : result.per_k) {
    out << s.k << ',' << s.mean << ',' << s.variance << ',' << s.stderr_mean << ',' << s.prediction_l1 << ','
        << s.prediction_l2 << ',' << s.z1 << ',' << s.z2 << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentResult& result, const nlohmann::json& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : result.per_k) {
    rows.push_back({{"k", s.k},
                    {"mean", s.mean},
                    {"var", s.variance},
                    {"stderr", s.stderr_mean},
                    {"mean_square", s.mean_square},
                    {"stderr_square", s.stderr_square},
                    {"pred_l1", s.prediction_l1},
                    {"pred_l2", s.prediction_l2},
                    {"z1", s.z1},
                    {"z2", s.z2}});
  }
  return {{"config", config},
          {"ensemble", to_string(result.ensemble.family)},
          {"N", result.ensemble.n},
          {"seed", result.ensemble.seed},
          {"k_max", result.k_max},
          {"trials", result.trials},
          {"samples_checked", result.samples_checked},
          {"interlacing_violations", result.interlacing_violations},
          {"max_trace_defect", result.max_trace_defect},
          {"moments", rows}};
}

}  // namespace mklab
