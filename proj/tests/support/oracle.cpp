#include "support/oracle.hpp"

#include <cassert>
#include <vector>

namespace testsupport {

double det_cofactor(std::span<const double> a, std::size_t dim) {
  assert(a.size() == dim * dim);
  assert(dim >= 1 && dim <= 4);
  if (dim == 1) return a[0];

  double det = 0.0;
  double sign = 1.0;
  std::vector<double> minor((dim - 1) * (dim - 1));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t m = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        if (j == col) continue;
        minor[m++] = a[i * dim + j];
      }
    }
    det += sign * a[col] * det_cofactor(minor, dim - 1);
    sign = -sign;
  }
  return det;
}

}  // namespace testsupport
