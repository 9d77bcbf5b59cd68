#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mklab {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" form, always with an explicit denominator.
std::string to_fraction_string(const Rational& q);

/// Accepts "p", "p/q" and "-p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer catalan(unsigned n);

template <class Scalar>
Scalar scalar_cast(const Rational& q);

template <>
inline Rational scalar_cast<Rational>(const Rational& q) {
  return q;
}

template <>
inline double scalar_cast<double>(const Rational& q) {
  return q.get_d();
}

}  // namespace mklab
