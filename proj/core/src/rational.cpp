#include "mklab/rational.hpp"

#include <stdexcept>
#include <string>

namespace mklab {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("bad rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

Integer catalan(unsigned n) {
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
  return binom / (n + 1);
}

}  // namespace mklab
