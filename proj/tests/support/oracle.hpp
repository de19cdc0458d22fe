#pragma once

#include <cstddef>
#include <span>

namespace testsupport {

// Determinant by cofactor expansion along the first row, independent of the
// library's Cholesky machinery.  Row-major square matrix, dim <= 4.
double det_cofactor(std::span<const double> a, std::size_t dim);

}  // namespace testsupport
