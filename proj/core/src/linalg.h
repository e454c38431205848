#pragma once

#include <cstddef>
#include <vector>

namespace mrplab::detail {

// Solves m x = b for a dense row-major n x n matrix. Throws NumericalError when
// the system is singular to working precision.
std::vector<double> solve_exact(std::size_t n, const std::vector<double>& m,
                                const std::vector<double>& b);

// Exact solve when the reciprocal condition estimate exceeds 1e-12, otherwise
// the minimum-norm least-squares solution through the pseudoinverse.
std::vector<double> solve_or_pinv(std::size_t n, const std::vector<double>& m,
                                  const std::vector<double>& b);

// (I - g p) as a dense row-major matrix.
std::vector<double> identity_minus(std::size_t n, const std::vector<double>& p, double g);

}  // namespace mrplab::detail
