#include "verify.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mklab/errors.hpp"
#include "mklab/nc_partition.hpp"
#include "mklab/permutation.hpp"
#include "mklab/transforms.hpp"
#include "mklab/weingarten.hpp"

namespace mklab::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Rational signed_catalan_product(const std::vector<int>& sizes) {
  Rational product(1);
  for (int s : sizes) {
    const Rational c(catalan(static_cast<unsigned>(s - 1)));
    product *= (s % 2 == 0) ? Rational(-c) : c;
  }
  return product;
}

std::string join(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += to_fraction_string(values[i]);
  }
  return out + ")";
}

// Each check returns an empty string on success, else a counterexample.

std::string check_thm12(int k, std::mt19937_64& rng, int samples, LevelReport& level) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  for (int s = 0; s < samples; ++s) {
    std::vector<Rational> values;
    for (int i = 0; i < k; ++i) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      values.push_back(q);
    }
    const FreeCumulantSequence<Rational> fc(values);
    const Rational closed = thm12_sum(fc, k);
    const Rational recursion = mk_forward(cumulants_to_moments(fc))[k];
    ++level.checks;
    if (closed != recursion) {
      return "k=" + std::to_string(k) + " fc=" + join(values) + " closed_form=" +
             to_fraction_string(closed) + " recursion=" + to_fraction_string(recursion);
    }
  }
  return {};
}

std::string check_prop_decomp(int k, LevelReport& level) {
  for (const auto& rho : enumerate_nc(k)) {
    const auto decompositions = kreweras_decompositions(rho);
    const long expected = static_cast<long>(rho.block_count()) - 1;
    ++level.checks;
    level.tally += expected;
    if (static_cast<long>(decompositions.size()) != expected) {
      return "rho=" + rho.to_string() + " has " + std::to_string(decompositions.size()) +
             " decompositions, expected " + std::to_string(expected);
    }
    for (const auto& d : decompositions) {
      if (insert_at(d.outer, d.insertion_point, d.inner) != rho) {
        return "rho=" + rho.to_string() + " decomposition outer=" + d.outer.to_string() +
               " p=" + std::to_string(d.insertion_point) + " inner=" + d.inner.to_string() +
               " does not reassemble";
      }
    }
  }
  return {};
}

std::string check_mobius(int k, LevelReport& level) {
  const auto& lattice = enumerate_nc(k);
  const auto bottom = NonCrossingPartition::finest(k);
  const auto top = NonCrossingPartition::coarsest(k);
  if (mobius_nc(bottom, top) != signed_catalan_product({k})) {
    return "mu(0_" + std::to_string(k) + ",1_" + std::to_string(k) + ")=" +
           to_fraction_string(mobius_nc(bottom, top));
  }
  for (const auto& nu : lattice) {
    // Defining relation from below: sum_{nu <= sigma} mu(nu, sigma) = [nu = 1_k].
    Rational upward(0);
    for (const auto& rho : lattice) {
      if (!leq(nu, rho)) continue;
      const Rational mu = mobius_nc(nu, rho);
      upward += mu;
      ++level.checks;
      if (mu != signed_catalan_product(interval_type(nu, rho))) {
        return "mu(" + nu.to_string() + "," + rho.to_string() + ")=" + to_fraction_string(mu) +
               " differs from the signed Catalan product over its interval type";
      }
    }
    if (upward != Rational(nu == top ? 1 : 0)) {
      return "sum over sigma >= " + nu.to_string() + " of mu(nu, sigma) is " +
             to_fraction_string(upward);
    }
  }
  return {};
}

std::string check_weingarten_asym(int k, LevelReport& level) {
  const long dims[] = {2L * k, 4L * k, 8L * k};
  std::vector<WeingartenTable> tables;
  for (long n : dims) tables.push_back(build_table(k, n));
  for (const auto& type : all_cycle_types(k)) {
    const Rational leading(mu_asymptotic(type));
    Rational errors[3];
    for (int i = 0; i < 3; ++i) {
      Integer scale;
      mpz_pow_ui(scale.get_mpz_t(), Integer(dims[i]).get_mpz_t(),
                 static_cast<unsigned long>(k + type.length()));
      errors[i] = abs(Rational(scale) * tables[static_cast<std::size_t>(i)].value(type) - leading);
    }
    for (int i = 0; i + 1 < 3; ++i) {
      ++level.checks;
      if (3 * errors[i + 1] > errors[i]) {
        return "k=" + std::to_string(k) + " type=" + type.to_string() + " error at N=" +
               std::to_string(dims[i + 1]) + " is " + std::to_string(errors[i + 1].get_d()) +
               ", more than a third of " + std::to_string(errors[i].get_d()) + " at N=" +
               std::to_string(dims[i]);
      }
    }
  }
  return {};
}

std::string check_group_iso(int k, LevelReport& level) {
  const auto& lattice = enumerate_nc(k);
  const Permutation gamma = Permutation::full_cycle(k);
  std::vector<Permutation> images;
  for (const auto& rho : lattice) {
    images.push_back(embed_nc(rho));
    ++level.checks;
    if (!is_geodesic(images.back(), gamma)) return "P(" + rho.to_string() + ") is not on a geodesic to gamma";
    if (complement_via_group(rho) != embed_nc(kreweras(rho))) {
      return "P(" + rho.to_string() + ")^-1 gamma = " + complement_via_group(rho).to_string() +
             " but P(K(rho)) = " + embed_nc(kreweras(rho)).to_string();
    }
  }
  long geodesics = 0;
  for_each_permutation(k, [&](const Permutation& sigma) {
    if (is_geodesic(sigma, gamma)) ++geodesics;
  });
  if (geodesics != static_cast<long>(lattice.size())) {
    return "k=" + std::to_string(k) + ": " + std::to_string(geodesics) + " geodesic permutations, " +
           std::to_string(lattice.size()) + " non-crossing partitions";
  }
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    const Permutation nu_inverse = images[a].inverse();
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      const Permutation between = nu_inverse * images[b];
      const bool below_in_group = images[a].length() + between.length() == images[b].length();
      const bool below = leq(lattice[a], lattice[b]);
      ++level.checks;
      if (below != below_in_group) {
        return "order mismatch for " + lattice[a].to_string() + " and " + lattice[b].to_string();
      }
      if (below && mobius_nc(lattice[a], lattice[b]) != Rational(mu_asymptotic(between.cycle_type()))) {
        return "mobius mismatch for " + lattice[a].to_string() + " <= " + lattice[b].to_string();
      }
    }
  }
  return {};
}

int first_level(Suite suite) { return suite == Suite::prop_decomp ? 2 : 1; }

}  // namespace

Suite parse_suite(const std::string& text) {
  if (text == "thm12") return Suite::thm12;
  if (text == "prop_decomp") return Suite::prop_decomp;
  if (text == "mobius") return Suite::mobius;
  if (text == "weingarten_asym") return Suite::weingarten_asym;
  if (text == "group_iso") return Suite::group_iso;
  throw std::invalid_argument("unknown verification suite '" + text + "'");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::thm12: return "thm12";
    case Suite::prop_decomp: return "prop_decomp";
    case Suite::mobius: return "mobius";
    case Suite::weingarten_asym: return "weingarten_asym";
    case Suite::group_iso: return "group_iso";
  }
  return "?";
}

int suite_cap(Suite suite) {
  switch (suite) {
    case Suite::thm12: return kMaxClosedFormOrder;
    case Suite::prop_decomp: return kMaxEnumerationSize;
    case Suite::mobius: return 8;
    case Suite::weingarten_asym: return kMaxWeingartenDegree;
    case Suite::group_iso: return 8;
  }
  return 0;
}

VerifyReport run_suite(Suite suite, int k_max, std::uint64_t seed, int samples) {
  if (k_max < first_level(suite)) {
    throw std::invalid_argument("verify " + to_string(suite) + ": kmax must be at least " +
                                std::to_string(first_level(suite)));
  }
  if (k_max > suite_cap(suite)) {
    throw SizeLimitError("verify " + to_string(suite) + ": kmax=" + std::to_string(k_max) +
                         " exceeds cap " + std::to_string(suite_cap(suite)));
  }
  VerifyReport report;
  report.suite = suite;
  std::mt19937_64 rng(seed);
  for (int k = first_level(suite); k <= k_max; ++k) {
    LevelReport level;
    level.k = k;
    const auto start = Clock::now();
    std::string failure;
    switch (suite) {
      case Suite::thm12: failure = check_thm12(k, rng, samples, level); break;
      case Suite::prop_decomp: failure = check_prop_decomp(k, level); break;
      case Suite::mobius: failure = check_mobius(k, level); break;
      case Suite::weingarten_asym: failure = check_weingarten_asym(k, level); break;
      case Suite::group_iso: failure = check_group_iso(k, level); break;
    }
    level.millis = elapsed_ms(start);
    report.levels.push_back(level);
    if (!failure.empty()) {
      report.counterexample = std::move(failure);
      break;
    }
  }
  return report;
}

}  // namespace mklab::cli
