#pragma once

#include <memory>

namespace hkdv {

// Uniform periodic grid on [-L/2, L/2) with n collocation points (n a power
// of two). Mode k of the half-spectrum carries frequency xi_k = 2*pi*k/L,
// k = 0..n/2; the unpaired Nyquist mode n/2 is zeroed by every multiplier.
struct Grid {
  int n = 0;
  double length = 0.0;
  double dx = 0.0;

  double x(int j) const { return -0.5 * length + j * dx; }
  double xi(int k) const { return 2.0 * 3.14159265358979323846 * k / length; }
  double dxi() const { return 2.0 * 3.14159265358979323846 / length; }
  int num_modes() const { return n / 2 + 1; }
  int nyquist() const { return n / 2; }

  bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
};

using GridPtr = std::shared_ptr<const Grid>;

// Throws std::invalid_argument unless n is a power of two with n >= 16 and
// length > 0.
GridPtr make_grid(int n, double length);

}  // namespace hkdv
