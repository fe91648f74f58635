#include "hkdv/grid.hpp"

#include <stdexcept>
#include <string>

namespace hkdv {

GridPtr make_grid(int n, double length) {
  if (n < 16 || (n & (n - 1)) != 0)
    throw std::invalid_argument("make_grid: n must be a power of two, n >= 16 (got " +
                                std::to_string(n) + ")");
  if (!(length > 0.0))
    throw std::invalid_argument("make_grid: length must be positive");
  auto g = std::make_shared<Grid>();
  g->n = n;
  g->length = length;
  g->dx = length / n;
  return g;
}

}  // namespace hkdv
