#include "hkdv/dispersion.hpp"

#include <cmath>
#include <stdexcept>

#include "hkdv/quadrature.hpp"

namespace hkdv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DispersionModel::DispersionModel(int m_in) : m(m_in) {
  if (m < 3) throw std::invalid_argument("DispersionModel: m must be >= 3");
}

cdouble DispersionModel::spatial_symbol(double xi) const {
  return cdouble(0.0, xi * std::pow(std::abs(xi), m - 1) / m);
}

Field propagate(const Field& f, double t, const DispersionModel& model) {
  const Grid& g = f.grid();
  std::vector<cdouble> sym(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) {
    double xi = g.xi(k);
    double theta = -(t / model.m) * xi * std::pow(std::abs(xi), model.m - 1);
    sym[k] = std::exp(cdouble(0.0, theta));
  }
  return multiplier_apply(f, sym);
}

CField propagate(const CField& f, double t, const DispersionModel& model) {
  const int m = model.m;
  return multiplier_apply(f, [t, m](double xi) {
    double theta = -(t / m) * xi * std::pow(std::abs(xi), m - 1);
    return std::exp(cdouble(0.0, theta));
  });
}

double phase(double t, double x, int m) {
  if (!(t > 0.0)) throw std::invalid_argument("phase: t must be positive");
  double mm = m;
  return (mm - 1.0) / mm * std::pow(t, -1.0 / (mm - 1.0)) *
             std::pow(std::abs(x), mm / (mm - 1.0)) -
         0.25 * kPi;
}

namespace {

// Integrand of (1/pi) int (i xi)^k e^{i(y xi - xi^m/m)} dxi at complex xi.
cdouble osc_integrand(cdouble xi, double y, int m, int k) {
  cdouble xim = std::pow(xi, m);
  cdouble expo = cdouble(0.0, 1.0) * (y * xi - xim / static_cast<double>(m));
  cdouble pre(1.0, 0.0);
  if (k > 0) pre = std::pow(cdouble(0.0, 1.0) * xi, k);
  return pre * std::exp(expo);
}

// Exponential decay rate along xi = base + r e^{-i theta}: -Im g.
double tail_decay(double r, cdouble base, double theta, double y, int m) {
  cdouble xi = base + r * std::exp(cdouble(0.0, -theta));
  cdouble g = y * xi - std::pow(xi, m) / static_cast<double>(m);
  return g.imag();
}

struct SegmentedValue {
  double value;
};

double q0_once(double y, int m, int k, double theta, double split, int order,
               int panel_refine) {
  // real-axis segment [0, xi_s] (empty for y <= 0)
  double xi_s = 0.0;
  if (y > 0.0) {
    double xi_star = std::pow(y, 1.0 / (m - 1));
    double curv = (m - 1) * std::pow(xi_star, m - 2);
    double width = curv > 0.0 ? 1.0 / std::sqrt(curv) : 1.0;
    xi_s = xi_star + split * std::min(width, xi_star + 1.0);
  }

  cdouble acc(0.0);
  if (xi_s > 0.0) {
    double phase_span = std::abs(y) * xi_s + std::pow(xi_s, m) / m;
    int panels = std::max(8, static_cast<int>(phase_span / 2.0) + 1) * panel_refine;
    acc += quad::integrate_c(
        [y, m, k](double xi) { return osc_integrand(cdouble(xi, 0.0), y, m, k); }, 0.0,
        xi_s, panels, order);
  }

  // rotated tail: find R with Im g >= 50 (integrand ~ e^{-50})
  cdouble base(xi_s, 0.0);
  double R = 1.0;
  while (tail_decay(R, base, theta, y, m) < 50.0 && R < 1e8) R *= 2.0;
  cdouble dir = std::exp(cdouble(0.0, -theta));
  double phase_span = std::abs(y) * R + std::pow(xi_s + R, m) / m;
  int panels = std::max(16, static_cast<int>(phase_span / 2.0) + 1) * panel_refine;
  acc += quad::integrate_c(
      [base, dir, y, m, k](double r) { return osc_integrand(base + r * dir, y, m, k) * dir; },
      0.0, R, panels, order);

  return acc.real() / kPi;
}

Q0Result q0_impl(double y, int m, int k, const OscQuadParams& q) {
  if (m < 3) throw std::invalid_argument("q0_eval: m must be >= 3");
  double theta = q.ray_angle > 0.0 ? q.ray_angle : 0.5 * kPi / m;
  if (theta > 0.5 * kPi / m + 1e-12)
    throw std::invalid_argument("q0_eval: ray_angle must lie in (0, pi/(2m)]");
  int order = std::max(q.nodes, 32);

  Q0Result res;
  double coarse = q0_once(y, m, k, theta, q.split_point, order, 1);
  double fine = q0_once(y, m, k, theta, q.split_point, order, 2);
  res.value = fine;
  res.err_estimate = std::abs(fine - coarse);
  res.converged = res.err_estimate <= 1e-9;
  return res;
}

}  // namespace

Q0Result q0_eval(double y, int m, const OscQuadParams& q) { return q0_impl(y, m, 0, q); }

Q0Result q0_derivative(double y, int m, int k, const OscQuadParams& q) {
  if (k < 0 || k > m - 2) throw std::invalid_argument("q0_derivative: need 0 <= k <= m-2");
  return q0_impl(y, m, k, q);
}

EnvelopeReport q0_derivative_envelope_check(int m, int k, const std::vector<double>& samples,
                                            const OscQuadParams& q) {
  EnvelopeReport rep;
  double lo = 0.0, hi = 0.0;
  for (double y : samples) {
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  double expo = static_cast<double>(k) / (m - 1) - (m - 2.0) / (2.0 * (m - 1));
  for (double y : samples) {
    Q0Result r = q0_derivative(y, m, k, q);
    if (!r.converged) throw std::runtime_error("q0 envelope: quadrature did not converge");
    double ratio = std::abs(r.value) / std::pow(1.0 + y * y, 0.5 * expo);
    rep.sup_ratio = std::max(rep.sup_ratio, ratio);
    if (y >= 0.5 * lo && y <= 0.5 * hi) rep.sup_ratio_inner = std::max(rep.sup_ratio_inner, ratio);
  }
  rep.relative_change =
      rep.sup_ratio > 0.0 ? (rep.sup_ratio - rep.sup_ratio_inner) / rep.sup_ratio : 0.0;
  rep.pass = std::isfinite(rep.sup_ratio) && rep.relative_change < 0.05;
  return rep;
}

double linear_oscillatory_leading(const std::function<cdouble(double)>& u0_hat,
                                  double t, double x, int m) {
  if (!(x > 0.0)) throw std::domain_error("linear_oscillatory_leading: x must be positive");
  if (!(t >= 1.0)) throw std::domain_error("linear_oscillatory_leading: t must be >= 1");
  double c0 = 2.0 / std::sqrt(m - 1.0);
  double xi_st = std::pow(x, 1.0 / (m - 1.0)) * std::pow(t, -1.0 / (m - 1.0));
  double amp = c0 * std::pow(t, -1.0 / m) *
               std::pow(std::pow(t, -1.0 / m) * x, -(m - 2.0) / (2.0 * (m - 1.0)));
  cdouble w = u0_hat(xi_st) * std::exp(cdouble(0.0, phase(t, x, m)));
  return amp * w.real();
}

std::vector<std::pair<double, double>> linear_sup_series(const Field& u0,
                                                         const DispersionModel& model,
                                                         const std::vector<double>& times,
                                                         int k) {
  std::vector<std::pair<double, double>> out;
  out.reserve(times.size());
  for (double t : times) {
    Field u = propagate(u0, t, model);
    if (k > 0) u = derivative(u, k);
    out.emplace_back(t, linf_norm(u));
  }
  return out;
}

}  // namespace hkdv
