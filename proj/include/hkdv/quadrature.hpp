#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hkdv {
namespace quad {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Nodes/weights by Newton iteration on P_n; cached per order.
const GaussLegendre& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order = 16);
std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, int panels, int order = 16);

// Composite rule with panel count doubled until two successive values agree
// to tol (absolute); returns the finer value and the last difference.
struct Result {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
};
Result integrate_to_tol(const std::function<double(double)>& f, double a, double b,
                        double tol, int initial_panels = 8, int max_doublings = 12);

}  // namespace quad
}  // namespace hkdv
