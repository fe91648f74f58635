#include "hkdv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hkdv {
namespace quad {

const GaussLegendre& gauss_legendre(int order) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(order);
  gl.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = order * (x * p1 - p0) / (x * x - 1.0);
    gl.nodes[order - 1 - i] = x;
    gl.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(gl)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
  const GaussLegendre& gl = gauss_legendre(order);
  double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double c = a + (p + 0.5) * h;
    double r = 0.5 * h;
    for (int i = 0; i < order; ++i) acc += gl.weights[i] * f(c + r * gl.nodes[i]) * r;
  }
  return acc;
}

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, int panels, int order) {
  const GaussLegendre& gl = gauss_legendre(order);
  double h = (b - a) / panels;
  std::complex<double> acc(0.0);
  for (int p = 0; p < panels; ++p) {
    double c = a + (p + 0.5) * h;
    double r = 0.5 * h;
    for (int i = 0; i < order; ++i) acc += gl.weights[i] * f(c + r * gl.nodes[i]) * r;
  }
  return acc;
}

Result integrate_to_tol(const std::function<double(double)>& f, double a, double b,
                        double tol, int initial_panels, int max_doublings) {
  Result res;
  int panels = initial_panels;
  double prev = integrate(f, a, b, panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    double cur = integrate(f, a, b, panels);
    res.value = cur;
    res.err_estimate = std::abs(cur - prev);
    if (res.err_estimate <= tol) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  return res;
}

}  // namespace quad
}  // namespace hkdv
