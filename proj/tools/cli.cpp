#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mklab/errors.hpp"
#include "mklab/experiment.hpp"
#include "mklab/nc_partition.hpp"
#include "mklab/weingarten.hpp"
#include "verify.hpp"

namespace mklab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw IoError("write to '" + path + "' failed");
}

// Config entries become "--key=value" tokens placed right after the
// subcommand name, so flags given explicitly (later on the line) win.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  if (args.empty()) return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::vector<std::string> tokens;
  for (const auto& [key, value] : read_config_file(path)) {
    if (key == "config") continue;
    tokens.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 1, tokens.begin(), tokens.end());
  return args;
}

NonCrossingPartition parse_partition(const std::string& text, int k) {
  const auto rho = NonCrossingPartition::parse(text, k);
  if (rho.ground_size() != k) {
    throw std::invalid_argument("partition " + text + " is not on {1.." + std::to_string(k) + "}");
  }
  return rho;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument("bad spectrum entry '" + item + "'");
    values.push_back(v);
  }
  return values;
}

// ---------------------------------------------------------------------------
// nc

struct NcOptions {
  int k = 0;
  std::string action;
  std::string partition;
  std::string upper;
  std::string out_path;
};

int cmd_nc(const NcOptions& o, std::ostream& out) {
  nlohmann::json results = nlohmann::json::array();
  auto emit = [&](const std::string& line, nlohmann::json item) {
    out << line << '\n';
    results.push_back(std::move(item));
  };

  if (o.action == "enumerate") {
    for (const auto& rho : enumerate_nc(o.k)) emit(rho.to_string(), rho.to_string());
  } else if (o.action == "kreweras") {
    if (!o.partition.empty()) {
      const auto rho = parse_partition(o.partition, o.k);
      emit(kreweras(rho).to_string(), {{"partition", rho.to_string()}, {"kreweras", kreweras(rho).to_string()}});
    } else {
      for (const auto& rho : enumerate_nc(o.k)) {
        emit(rho.to_string() + " -> " + kreweras(rho).to_string(),
             {{"partition", rho.to_string()}, {"kreweras", kreweras(rho).to_string()}});
      }
    }
  } else if (o.action == "decompositions") {
    if (o.partition.empty()) throw std::invalid_argument("nc decompositions needs --partition");
    const auto rho = parse_partition(o.partition, o.k);
    for (const auto& d : kreweras_decompositions(rho)) {
      std::ostringstream line;
      line << "support=[" << d.support_first << ',' << d.support_last << "] point=" << d.insertion_point
           << " outer=" << d.outer << " inner=" << d.inner;
      emit(line.str(), {{"support_first", d.support_first},
                        {"support_last", d.support_last},
                        {"insertion_point", d.insertion_point},
                        {"outer", d.outer.to_string()},
                        {"inner", d.inner.to_string()}});
    }
  } else if (o.action == "mobius") {
    const auto top = o.upper.empty() ? NonCrossingPartition::coarsest(o.k) : parse_partition(o.upper, o.k);
    auto entry = [&](const NonCrossingPartition& nu) {
      const auto mu = to_fraction_string(mobius_nc(nu, top));
      emit(nu.to_string() + " " + top.to_string() + " " + mu,
           {{"lower", nu.to_string()}, {"upper", top.to_string()}, {"mobius", mu}});
    };
    if (!o.partition.empty()) {
      entry(parse_partition(o.partition, o.k));
    } else {
      for (const auto& nu : enumerate_nc(o.k)) {
        if (leq(nu, top)) entry(nu);
      }
    }
  }

  if (!o.out_path.empty()) {
    const nlohmann::json doc = {{"k", o.k}, {"action", o.action}, {"results", results}};
    write_file(o.out_path, doc.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite;
  int k_max = 0;
  std::uint64_t seed = 1;
  int samples = 20;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const Suite suite = parse_suite(o.suite);
  const auto report = run_suite(suite, o.k_max, o.seed, o.samples);
  const char* tally_label = suite == Suite::prop_decomp ? "sum_blocks_minus_one" : nullptr;
  for (const auto& level : report.levels) {
    out << "k=" << level.k << " checks=" << level.checks;
    if (tally_label) out << ' ' << tally_label << '=' << level.tally;
    out << " time_ms=" << std::fixed << std::setprecision(2) << level.millis << std::defaultfloat << '\n';
  }
  if (!report.passed()) {
    out << "FAIL " << to_string(suite) << ": " << *report.counterexample << '\n';
    return kExitFailure;
  }
  out << "PASS " << to_string(suite) << " kmax=" << o.k_max << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// wg

struct WgOptions {
  int k = 0;
  long n = 0;
  std::string out_path;
};

int cmd_wg(const WgOptions& o, std::ostream& out) {
  const auto table = build_table(o.k, o.n);
  out << "k=" << o.k << " N=" << o.n << '\n';
  for (const auto& [type, value] : table.entries()) {
    out << std::left << std::setw(18) << type.to_string() << ' ' << std::setw(28) << to_fraction_string(value)
        << ' ' << std::setprecision(10) << value.get_d() << '\n';
  }
  if (!o.out_path.empty()) write_file(o.out_path, table.to_json().dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sim

struct SimOptions {
  std::string config_path;
  std::string ensemble = "gue";
  int n = 100;
  int k_max = 6;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string spectrum;
  double spectrum_const = std::nan("");
  double ratio = 0.5;
  std::string out_prefix = "mklab_sim";
  double gate = 3.0;
  double allowance = 30.0;
  bool gate_second = false;
  double allowance_second = 60.0;
  int threads = 0;
};

int cmd_sim(const SimOptions& o, std::ostream& out) {
  EnsembleSpec spec;
  spec.family = parse_ensemble_family(o.ensemble);
  spec.n = o.n;
  spec.seed = o.seed;
  spec.ratio = o.ratio;
  if (spec.family == EnsembleFamily::fixed_spectrum) {
    if (!std::isnan(o.spectrum_const)) {
      spec.spectrum.assign(static_cast<std::size_t>(o.n), o.spectrum_const);
    } else if (!o.spectrum.empty()) {
      spec.spectrum = parse_list(o.spectrum);
    } else {
      throw std::invalid_argument("sim: fixed ensemble needs --spectrum or --spectrum-const");
    }
  }
  spec.validate();
  if (o.gate < 0 || o.allowance < 0 || o.allowance_second < 0) {
    throw std::invalid_argument("sim: gate and allowances must be non-negative");
  }

  nlohmann::json config = {{"ensemble", to_string(spec.family)},
                           {"n", spec.n},
                           {"kmax", o.k_max},
                           {"trials", o.trials},
                           {"seed", spec.seed},
                           {"gate", o.gate},
                           {"allowance", o.allowance},
                           {"gate_second", o.gate_second},
                           {"allowance_second", o.allowance_second}};
  if (spec.family == EnsembleFamily::fixed_spectrum) config["spectrum"] = spec.spectrum;
  if (spec.family == EnsembleFamily::wishart) {
    config["c"] = spec.ratio;
    config["wishart_columns"] = spec.wishart_columns();
  }

  const auto result = run_concentration_experiment(spec, o.k_max, o.trials, o.threads);

  write_file(o.out_prefix + ".csv", to_csv(result, config));
  write_file(o.out_prefix + ".json", to_json(result, config).dump(2) + "\n");

  const double inv_n = 1.0 / static_cast<double>(spec.n);
  bool pass = true;
  out << "ensemble=" << to_string(spec.family) << " N=" << spec.n << " trials=" << o.trials
      << " seed=" << spec.seed << '\n';
  out << std::right << std::setw(3) << "k" << std::setw(14) << "mean" << std::setw(12) << "stderr"
      << std::setw(12) << "pred_l1" << std::setw(9) << "z1" << std::setw(14) << "mean_sq" << std::setw(12)
      << "pred_l2" << std::setw(9) << "z2" << "  verdict\n";
  for (const auto& s : result.per_k) {
    const bool ok1 = std::abs(s.mean - s.prediction_l1) <= o.gate * s.stderr_mean + o.allowance * inv_n;
    const bool ok2 = !o.gate_second ||
                     std::abs(s.mean_square - s.prediction_l2) <= o.gate * s.stderr_square + o.allowance_second * inv_n;
    pass = pass && ok1 && ok2;
    out << std::setw(3) << s.k << std::setprecision(6) << std::setw(14) << s.mean << std::setw(12)
        << s.stderr_mean << std::setw(12) << s.prediction_l1 << std::setprecision(3) << std::setw(9) << s.z1
        << std::setprecision(6) << std::setw(14) << s.mean_square << std::setw(12) << s.prediction_l2
        << std::setprecision(3) << std::setw(9) << s.z2 << "  " << (ok1 && ok2 ? "ok" : "FAIL") << '\n';
  }
  out << "interlacing_violations=" << result.interlacing_violations << '/' << result.samples_checked
      << " max_trace_defect=" << std::setprecision(3) << result.max_trace_defect << '\n';
  out << "wrote " << o.out_prefix << ".csv " << o.out_prefix << ".json\n";
  out << (pass ? "PASS" : "FAIL") << " gate=" << o.gate << " allowance=" << o.allowance << "/N\n";
  return pass ? kExitOk : kExitFailure;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(number) + ": empty key");
    entries[key] = value;
  }
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-crossing partition, Weingarten and Rayleigh-measure toolkit", "mklab"};
  app.require_subcommand(1);

  NcOptions nc_opts;
  auto* nc = app.add_subcommand("nc", "Dump non-crossing partition data");
  nc->add_option("--k", nc_opts.k, "Ground set size")->required()->check(CLI::Range(1, kMaxEnumerationSize));
  nc->add_option("action", nc_opts.action, "enumerate | kreweras | decompositions | mobius")
      ->required()
      ->check(CLI::IsMember({"enumerate", "kreweras", "decompositions", "mobius"}));
  nc->add_option("--partition", nc_opts.partition, "Partition such as {1,3|2}");
  nc->add_option("--upper", nc_opts.upper, "Upper end of the Moebius interval (default 1_k)");
  nc->add_option("--out", nc_opts.out_path, "Also write the results as JSON to this file");

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run an exhaustive identity check");
  verify->add_option("suite", verify_opts.suite, "thm12 | prop_decomp | mobius | weingarten_asym | group_iso")
      ->required()
      ->check(CLI::IsMember({"thm12", "prop_decomp", "mobius", "weingarten_asym", "group_iso"}));
  verify->add_option("--kmax", verify_opts.k_max, "Largest k checked")->required();
  verify->add_option("--seed", verify_opts.seed, "Seed for random inputs")->capture_default_str();
  verify->add_option("--samples", verify_opts.samples, "Random sequences per k (thm12)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  WgOptions wg_opts;
  auto* wg = app.add_subcommand("wg", "Exact Weingarten table");
  wg->add_option("--k", wg_opts.k, "Degree")->required()->check(CLI::Range(1, kMaxWeingartenDegree));
  wg->add_option("--n", wg_opts.n, "Matrix dimension N")->required()->check(CLI::PositiveNumber);
  wg->add_option("--out", wg_opts.out_path, "Write the table as JSON to this file");

  SimOptions sim_opts;
  auto* sim = app.add_subcommand("sim", "Monte Carlo concentration experiment");
  sim->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sim->add_option("--config", sim_opts.config_path, "key = value file; explicit flags override it");
  sim->add_option("--ensemble", sim_opts.ensemble, "gue | fixed | wishart")
      ->capture_default_str()
      ->check(CLI::IsMember({"gue", "fixed", "wishart"}));
  sim->add_option("--n", sim_opts.n, "Matrix dimension N")->capture_default_str()->check(CLI::Range(2, 100000));
  sim->add_option("--kmax", sim_opts.k_max, "Largest moment order")
      ->capture_default_str()
      ->check(CLI::Range(1, kMaxExperimentOrder));
  sim->add_option("--trials", sim_opts.trials, "Number of samples")
      ->capture_default_str()
      ->check(CLI::Range(kMinTrials, 100000000));
  sim->add_option("--seed", sim_opts.seed, "Base seed")->capture_default_str();
  sim->add_option("--spectrum", sim_opts.spectrum, "Comma-separated eigenvalues (fixed ensemble)");
  sim->add_option("--spectrum-const", sim_opts.spectrum_const, "Use N copies of this value (fixed ensemble)");
  sim->add_option("--c", sim_opts.ratio, "Wishart ratio M/N")->capture_default_str();
  sim->add_option("--out-prefix", sim_opts.out_prefix, "Writes PREFIX.csv and PREFIX.json")->capture_default_str();
  sim->add_option("--gate", sim_opts.gate, "Pass iff |mean - pred| <= gate*stderr + allowance/N")
      ->capture_default_str();
  sim->add_option("--allowance", sim_opts.allowance, "Finite-N allowance a in a/N")->capture_default_str();
  sim->add_flag("--gate-second", sim_opts.gate_second, "Also gate E[M_k^2] against its prediction");
  sim->add_option("--allowance-second", sim_opts.allowance_second, "Allowance for the second-moment gate")
      ->capture_default_str();
  sim->add_option("--threads", sim_opts.threads, "Worker threads (0 = all; MKLAB_THREADS caps)")
      ->capture_default_str();

  try {
    std::vector<std::string> tokens = inject_config(args);
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
    if (nc->parsed()) return cmd_nc(nc_opts, out);
    if (verify->parsed()) return cmd_verify(verify_opts, out);
    if (wg->parsed()) return cmd_wg(wg_opts, out);
    if (sim->parsed()) return cmd_sim(sim_opts, out);
    return kExitFailure;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace mklab::cli
