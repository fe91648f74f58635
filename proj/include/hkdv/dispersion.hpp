#pragma once

#include <functional>
#include <vector>

#include "hkdv/field.hpp"

namespace hkdv {

// Linear part of the equation: L = d_t + (1/m)|d_x|^{m-1} d_x, with Fourier
// symbol of the spatial operator (i/m) xi |xi|^{m-1} (odd-imaginary, group
// velocity |xi|^{m-1}).
struct DispersionModel {
  int m = 4;

  explicit DispersionModel(int m_in = 4);
  cdouble spatial_symbol(double xi) const;  // (i/m) xi |xi|^{m-1}
};

// Free propagator U(t) = exp(-(t/m)|d_x|^{m-1} d_x); exactly unitary on the
// spectrum, two-sided in t.
Field propagate(const Field& f, double t, const DispersionModel& model);
CField propagate(const CField& f, double t, const DispersionModel& model);

// Stationary phase of the free flow for x > 0:
//   phi(t,x) = ((m-1)/m) t^{-1/(m-1)} |x|^{m/(m-1)} - pi/4.
double phase(double t, double x, int m);

// --- generalized Airy fundamental solution ----------------------------------

// Q_0(y) = (1/pi) Re int_0^inf e^{i(y xi - xi^m/m)} dxi, evaluated by
// rotating the tail onto the ray arg(xi - xi_split) = -ray_angle where the
// integrand decays like e^{-r^m sin(m theta)/m}; for y > 0 the stationary
// point xi_* = y^{1/(m-1)} is first enclosed in a real-axis panel of
// half-width split_point / sqrt(|g''(xi_*)|).
struct OscQuadParams {
  double ray_angle = 0.0;   // 0 -> default pi/(2m)
  int nodes = 64;           // Gauss-Legendre order per panel
  double split_point = 6.0; // stationary-point buffer, in curvature widths
};

struct Q0Result {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
};

Q0Result q0_eval(double y, int m, const OscQuadParams& q = {});
// k-th derivative by differentiating under the (rotated) integral sign.
Q0Result q0_derivative(double y, int m, int k, const OscQuadParams& q = {});

// max over samples of |Q0^(k)(y)| / <y>^{k/(m-1) - (m-2)/(2(m-1))}, plus the
// same sup over the inner half range as a stability probe.
struct EnvelopeReport {
  double sup_ratio = 0.0;
  double sup_ratio_inner = 0.0;  // over the middle half of the sample range
  double relative_change = 0.0;  // |sup - sup_inner| / sup
  bool pass = false;
};
EnvelopeReport q0_derivative_envelope_check(int m, int k, const std::vector<double>& samples,
                                            const OscQuadParams& q = {});

// Leading stationary-phase term of U(t)u0 at x > 0:
//   c0 t^{-1/m} (t^{-1/m}x)^{-(m-2)/(2(m-1))} Re{u0_hat(xi_st) e^{i phi}},
// with c0 = 2/sqrt(m-1) and xi_st = t^{-1/(m-1)} x^{1/(m-1)}.
double linear_oscillatory_leading(const std::function<cdouble(double)>& u0_hat,
                                  double t, double x, int m);

// sup_x |d_x^k U(t) u0| sampled over `times`; the caller fits log-log slopes
// against the expected rate -(k+1)/m.
std::vector<std::pair<double, double>> linear_sup_series(const Field& u0,
                                                         const DispersionModel& model,
                                                         const std::vector<double>& times,
                                                         int k);

}  // namespace hkdv
