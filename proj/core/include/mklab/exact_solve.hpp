#pragma once

#include <vector>

#include "mklab/rational.hpp"

namespace mklab {

/// Solves A x = b over the rationals by Gauss-Jordan elimination with
/// first-nonzero pivoting. A is square, row-major. Throws std::logic_error
/// if A is singular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace mklab
