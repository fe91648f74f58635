#include "hkdv/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hkdv/fft.hpp"

namespace hkdv {

namespace {
constexpr double kSqrt2Pi = 2.50662827463100050242;

int smooth_size(int lo) {
  for (int s = lo;; ++s) {
    int r = s;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return s;
  }
}
}  // namespace

NonlinearitySpec::NonlinearitySpec(int m_in, double scale_in) : m(m_in), scale(scale_in) {
  if (m < 3) throw std::invalid_argument("NonlinearitySpec: m must be >= 3");
}

NonlinearitySpec NonlinearitySpec::with_perturbation(int m, double p, double coeff,
                                                     bool integer_power) {
  NonlinearitySpec s(m, 1.0);
  if (!(p > m)) throw std::invalid_argument("NonlinearitySpec: perturbation needs p > m");
  s.perturbed = true;
  s.p = p;
  s.coeff = coeff;
  s.integer_power = integer_power;
  return s;
}

double NonlinearitySpec::F(double u) const {
  if (!perturbed) return 0.0;
  if (integer_power) return coeff * std::pow(u, std::ceil(p));
  return coeff * std::pow(std::abs(u), p - 1.0) * u;
}

double NonlinearitySpec::F_derivative(double u, int j) const {
  if (!perturbed) return 0.0;
  if (integer_power) {
    double q = std::ceil(p);
    double c = coeff;
    for (int i = 0; i < j; ++i) {
      c *= q;
      q -= 1.0;
    }
    return c * std::pow(u, q);
  }
  // d^j/du^j [ |u|^{p-1} u ] = p(p-1)...(p-j+1) |u|^{p-j-1} u^{...parity}
  double c = coeff;
  double q = p;
  for (int i = 0; i < j; ++i) {
    c *= q;
    q -= 1.0;
  }
  double mag = std::pow(std::abs(u), q);
  bool odd = (j % 2 == 0);  // F odd, derivatives alternate odd/even
  if (odd) return c * mag * (u < 0 ? -1.0 : (u > 0 ? 1.0 : 0.0));
  return c * mag;
}

double NonlinearitySpec::F_antiderivative(double u) const {
  if (!perturbed) return 0.0;
  if (integer_power) {
    double q = std::ceil(p);
    return coeff * std::pow(u, q + 1.0) / (q + 1.0);
  }
  return coeff * std::pow(std::abs(u), p + 1.0) / (p + 1.0);
}

double NonlinearitySpec::nonlinear_map(double u) const {
  double v = std::pow(u, m);
  if (perturbed) v += F(u);
  return scale * v;
}

double NonlinearitySpec::pad_factor() const {
  double top = m;
  if (perturbed) top = std::max(top, std::ceil(p));
  return 0.5 * (top + 1.0);
}

std::vector<double> NonlinearitySpec::derivative_bound_ratios(
    const std::vector<double>& samples) const {
  std::vector<double> ratios(4, 0.0);
  for (double u : samples) {
    if (u == 0.0) continue;
    for (int j = 0; j <= 3; ++j) {
      double bound = std::pow(std::abs(u), p - j);
      double val = (j == 0) ? std::abs(F(u)) : std::abs(F_derivative(u, j));
      if (bound > 0.0) ratios[j] = std::max(ratios[j], val / bound);
    }
  }
  return ratios;
}

Field rhs_nonlinear(const Field& u, const NonlinearitySpec& nonlin) {
  if (linf_norm(u) > 1e6)
    throw std::runtime_error("rhs_nonlinear: amplitude overflow (|u| > 1e6)");
  if (nonlin.scale == 0.0) return Field::zero(u.grid_ptr());
  Field g = dealiased_map(u, [&nonlin](double v) { return nonlin.nonlinear_map(v); },
                          nonlin.pad_factor());
  return derivative(g, 1);
}

ConservedTriple conserved_quantities(const Field& u, const NonlinearitySpec& nonlin) {
  ConservedTriple c;
  c.mass = mass(u);
  c.momentum = inner(u, u);
  const int m = nonlin.m;
  const Grid& g = u.grid();
  const auto& spec = u.spectrum();
  double kin = 0.0;
  for (int k = 0; k < g.num_modes(); ++k) {
    double mult = (k == 0 || k == g.nyquist()) ? 1.0 : 2.0;
    kin += mult * std::pow(std::abs(g.xi(k)), m - 1) * std::norm(spec[k]);
  }
  kin *= g.dxi() / (2.0 * m);
  double pot = mass(dealiased_map(u,
                                  [&nonlin, m](double v) {
                                    double w = std::pow(v, m + 1) / (m + 1.0);
                                    if (nonlin.perturbed) w += nonlin.F_antiderivative(v);
                                    return nonlin.scale * w;
                                  },
                                  0.5 * (std::max<double>(m + 1, nonlin.perturbed
                                                                     ? std::ceil(nonlin.p) + 1
                                                                     : 0) +
                                         1.0)));
  c.energy = kin - pot;
  return c;
}

VectorFieldDiag vector_fields(const SolverState& state) {
  const Field& u = state.u;
  const double t = state.t;
  const int m = state.model.m;
  VectorFieldDiag d;
  d.Ju = multiply_by_x(u) - t * fractional_derivative(u, m - 1);
  Field nl = dealiased_map(u, [&](double v) { return state.nonlin.nonlinear_map(v); },
                           state.nonlin.pad_factor());
  d.Lambda_u = d.Ju + (m * t) * nl;
  double hs = hs_norm(u, (m - 1.0) / (2.0 * m));
  double lam = l2_norm(d.Lambda_u);
  d.X_norm = std::sqrt(hs * hs + lam * lam);
  double tm = std::pow(std::max(t, 1e-300), 1.0 / m);
  Field low = multiplier_apply(u, [tm](double xi) {
    return 1.0 / std::sqrt(1.0 + tm * tm * xi * xi);
  });
  d.Xt_norm = l2_norm(d.Ju) + tm * l2_norm(low);
  d.boundary_warning = mass_fraction_outer(u, 0.1) >= 1e-8;
  return d;
}

double bootstrap_weighted_sup(const Field& u, double t, int k, int m) {
  if (k < 0 || k > m - 2) throw std::invalid_argument("bootstrap_weighted_sup: bad k");
  if (!(t >= 1.0)) throw std::invalid_argument("bootstrap_weighted_sup: t must be >= 1");
  Field du = derivative(u, k);
  WeightSpec w;
  w.t = t;
  w.m = m;
  w.beta = (m - 2.0) / (2.0 * (m - 1.0)) - static_cast<double>(k) / (m - 1.0);
  w.kind = WeightSpec::Kind::JapaneseBracket;
  return std::pow(t, (k + 1.0) / m) * weighted_sup(du, w, Interval{});
}

double sigma_norm(const Field& u, double s) {
  return hs_norm(u, s) + l2_norm(multiply_by_x(u));
}

// ---------------------------------------------------------------------------
// IFRK4 stepper in the integrating-factor frame v_hat = e^{(it/m) xi|xi|^{m-1}} u_hat.
// The linear phase is applied exactly; RK4 only sees the nonlinear term.

namespace {

struct Stepper {
  const Grid& g;
  DispersionModel model;
  NonlinearitySpec nonlin;
  int n_pad;
  double syn_scale, ana_scale;
  std::vector<double> theta;  // linear phase rate per mode: -(1/m) xi|xi|^{m-1}
  std::vector<cdouble> pad_hc, pad_back;
  std::vector<double> w;
  std::map<double, std::vector<cdouble>> exp_cache;
  std::vector<double> filter_sigma;

  Stepper(const Grid& grid, const DispersionModel& mdl, const NonlinearitySpec& nl,
          bool filter_on)
      : g(grid), model(mdl), nonlin(nl) {
    n_pad = smooth_size(static_cast<int>(std::ceil(g.n * std::max(nonlin.pad_factor(), 1.5))));
    syn_scale = g.dxi() / kSqrt2Pi;
    ana_scale = (g.length / n_pad) / kSqrt2Pi;
    theta.resize(g.num_modes());
    for (int k = 0; k < g.num_modes(); ++k) {
      double xi = g.xi(k);
      theta[k] = -(1.0 / model.m) * xi * std::pow(std::abs(xi), model.m - 1);
    }
    pad_hc.resize(n_pad / 2 + 1);
    pad_back.resize(n_pad / 2 + 1);
    w.resize(n_pad);
    if (filter_on) {
      filter_sigma.assign(g.num_modes(), 1.0);
      int k0 = (5 * g.nyquist()) / 6;
      for (int k = k0; k < g.num_modes(); ++k) {
        double s = static_cast<double>(k - k0) / (g.nyquist() - k0);
        filter_sigma[k] = std::exp(-36.0 * std::pow(s, 8));
      }
    }
  }

  const std::vector<cdouble>& exps(double h) {
    auto it = exp_cache.find(h);
    if (it != exp_cache.end()) return it->second;
    std::vector<cdouble> e(g.num_modes());
    for (int k = 0; k < g.num_modes(); ++k) e[k] = std::exp(cdouble(0.0, h * theta[k]));
    if (exp_cache.size() > 64) exp_cache.clear();
    return exp_cache.emplace(h, std::move(e)).first->second;
  }

  // N(u_hat) = i xi * F[scale(u^m + F(u))] with alias-free product.
  void rhs(const std::vector<cdouble>& uhat, std::vector<cdouble>& out) {
    if (nonlin.scale == 0.0) {
      out.assign(g.num_modes(), cdouble(0.0));
      return;
    }
    std::fill(pad_hc.begin(), pad_hc.end(), cdouble(0.0));
    for (int k = 0; k <= g.nyquist(); ++k)
      pad_hc[k] = ((k % 2 == 0) ? 1.0 : -1.0) * uhat[k];
    fft::inverse_c2r(n_pad, pad_hc.data(), w.data());
    for (double& v : w) v = nonlin.nonlinear_map(v * syn_scale);
    fft::forward_r2c(n_pad, w.data(), pad_back.data());
    out.resize(g.num_modes());
    for (int k = 0; k < g.num_modes(); ++k) {
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      out[k] = cdouble(0.0, g.xi(k)) * (sign * ana_scale * pad_back[k]);
    }
    out[g.nyquist()] = 0.0;
  }

  // One IFRK4 step of size h.
  void rk_step(std::vector<cdouble>& uhat, double h) {
    const int M = g.num_modes();
    const auto& Eh = exps(h);
    const auto& E2 = exps(0.5 * h);
    std::vector<cdouble> k1(M), k2(M), k3(M), k4(M), a(M);

    rhs(uhat, k1);
    for (int k = 0; k < M; ++k) a[k] = E2[k] * (uhat[k] + 0.5 * h * k1[k]);
    rhs(a, k2);
    for (int k = 0; k < M; ++k) a[k] = E2[k] * uhat[k] + 0.5 * h * k2[k];
    rhs(a, k3);
    for (int k = 0; k < M; ++k) a[k] = Eh[k] * uhat[k] + h * E2[k] * k3[k];
    rhs(a, k4);
    for (int k = 0; k < M; ++k)
      uhat[k] = Eh[k] * uhat[k] +
                (h / 6.0) * (Eh[k] * k1[k] + 2.0 * E2[k] * (k2[k] + k3[k]) + k4[k]);
    uhat[g.nyquist()] = 0.0;
    if (!filter_sigma.empty())
      for (int k = 0; k < M; ++k) uhat[k] *= filter_sigma[k];
  }

  double err_norm(const std::vector<cdouble>& a, const std::vector<cdouble>& b) const {
    double s = 0.0;
    for (int k = 0; k < g.num_modes(); ++k) {
      double mult = (k == 0 || k == g.nyquist()) ? 1.0 : 2.0;
      s += mult * std::norm(a[k] - b[k]);
    }
    return std::sqrt(s * g.dxi());
  }
};

}  // namespace

void step(SolverState& state, double& dt, const EvolveOptions& opt) {
  Stepper st(state.u.grid(), state.model, state.nonlin, opt.filter);
  std::vector<cdouble> uhat = state.u.spectrum();
  double h = dt;
  for (;;) {
    if (h < opt.dt_min)
      throw std::runtime_error("step: dt underflow (blow-up detector) at t = " +
                               std::to_string(state.t));
    std::vector<cdouble> big = uhat;
    st.rk_step(big, h);
    std::vector<cdouble> two = uhat;
    st.rk_step(two, 0.5 * h);
    st.rk_step(two, 0.5 * h);
    double err = st.err_norm(big, two);
    if (err <= opt.tol) {
      state.t += h;
      state.u = Field::from_spectrum(state.u.grid_ptr(), two);
      state.stats.accepted += 2;
      state.stats.dt = h;
      double grow = err > 0.0 ? 0.9 * std::pow(opt.tol / err, 0.2) : 2.0;
      dt = std::min(opt.dt_max, h * std::clamp(grow, 0.2, 2.0));
      return;
    }
    state.stats.rejected += 1;
    h *= 0.5;
  }
}

void evolve_fixed_dt(SolverState& state, double t_end, double dt, bool filter) {
  EvolveOptions opt;
  opt.filter = filter;
  Stepper st(state.u.grid(), state.model, state.nonlin, filter);
  std::vector<cdouble> uhat = state.u.spectrum();
  while (state.t < t_end - 1e-12) {
    double h = std::min(dt, t_end - state.t);
    st.rk_step(uhat, h);
    state.t += h;
    state.stats.accepted += 1;
    state.stats.dt = h;
  }
  state.u = Field::from_spectrum(state.u.grid_ptr(), uhat);
}

Trajectory evolve(SolverState state, double t_end, std::vector<double> snapshot_times,
                  const EvolveOptions& opt,
                  const std::function<void(const SolverState&)>& observer) {
  if (!(t_end > state.t)) throw std::invalid_argument("evolve: t_end must exceed state.t");
  std::sort(snapshot_times.begin(), snapshot_times.end());
  std::vector<double> marks;
  for (double t : snapshot_times)
    if (t > state.t + 1e-12 && t < t_end - 1e-12) marks.push_back(t);
  marks.push_back(t_end);

  Trajectory traj;
  state.stats.filter_on = opt.filter;
  auto record = [&](const SolverState& s) {
    traj.snapshots.push_back(s);
    double frac = mass_fraction_outer(s.u, 0.1);
    traj.max_outer_mass_fraction = std::max(traj.max_outer_mass_fraction, frac);
    if (frac >= 1e-8) traj.wrap_flagged = true;
    if (observer) observer(s);
  };
  record(state);

  Stepper st(state.u.grid(), state.model, state.nonlin, opt.filter);
  std::vector<cdouble> uhat = state.u.spectrum();
  double dt = opt.dt_init;
  for (double mark : marks) {
    while (state.t < mark - 1e-12) {
      double h = std::min(dt, mark - state.t);
      // step-doubling control on the clipped step
      for (;;) {
        if (h < opt.dt_min)
          throw std::runtime_error("evolve: dt underflow (blow-up detector) at t = " +
                                   std::to_string(state.t));
        std::vector<cdouble> big = uhat;
        st.rk_step(big, h);
        std::vector<cdouble> two = uhat;
        st.rk_step(two, 0.5 * h);
        st.rk_step(two, 0.5 * h);
        double err = st.err_norm(big, two);
        if (err <= opt.tol) {
          state.t += h;
          uhat = std::move(two);
          state.stats.accepted += 2;
          state.stats.dt = h;
          double grow = err > 0.0 ? 0.9 * std::pow(opt.tol / err, 0.2) : 2.0;
          dt = std::min(opt.dt_max, h * std::clamp(grow, 0.2, 2.0));
          break;
        }
        state.stats.rejected += 1;
        h *= 0.5;
      }
    }
    state.t = mark;
    state.u = Field::from_spectrum(state.u.grid_ptr(), uhat);
    record(state);
  }
  return traj;
}

}  // namespace hkdv
