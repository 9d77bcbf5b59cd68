#include "mklab/weingarten.hpp"

#include "mklab/exact_solve.hpp"

namespace mklab {

Integer mu_asymptotic(const CycleType& type) {
  Integer result(1);
  for (int c : type.parts()) {
    const Integer cat = catalan(static_cast<unsigned>(c - 1));
    result *= (c % 2 == 1) ? cat : Integer(-cat);
  }
  return result;
}

nlohmann::json WeingartenTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [type, value] : values_) {
    entries.push_back({{"cycle_type", type.parts()},
                       {"numerator", value.get_num().get_str()},
                       {"denominator", value.get_den().get_str()}});
  }
  return {{"k", k_}, {"N", n_}, {"entries", entries}};
}

WeingartenTable build_table(int k, long n) {
  if (k < 1) throw std::invalid_argument("build_table: k must be positive");
  if (k > kMaxWeingartenDegree) {
    throw SizeLimitError("build_table: k=" + std::to_string(k) + " exceeds cap " +
                         std::to_string(kMaxWeingartenDegree));
  }
  if (n < k) {
    throw ConditioningError("build_table: N=" + std::to_string(n) + " < k=" + std::to_string(k) +
                            " leaves the Gram system singular");
  }

  const auto types = all_cycle_types(k);
  std::map<CycleType, std::size_t> column;
  for (std::size_t i = 0; i < types.size(); ++i) column.emplace(types[i], i);

  std::vector<Integer> powers(static_cast<std::size_t>(k) + 1);
  powers[0] = 1;
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * n;

  std::vector<Permutation> group;
  std::vector<std::size_t> group_column;
  for_each_permutation(k, [&](const Permutation& p) {
    group_column.push_back(column.at(p.cycle_type()));
    group.push_back(p);
  });

  const std::size_t m = types.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> rhs(m, Rational(0));
  for (std::size_t row = 0; row < m; ++row) {
    const Permutation sigma_inv = Permutation::representative(types[row]).inverse();
    for (std::size_t g = 0; g < group.size(); ++g) {
      a[row][group_column[g]] += powers[static_cast<std::size_t>((sigma_inv * group[g]).cycle_count())];
    }
    if (types[row].length() == 0) rhs[row] = 1;
  }

  const auto solution = solve_exact(std::move(a), std::move(rhs));
  std::map<CycleType, Rational> values;
  for (std::size_t i = 0; i < m; ++i) values.emplace(types[i], solution[i]);
  return {k, n, std::move(values)};
}

}  // namespace mklab
