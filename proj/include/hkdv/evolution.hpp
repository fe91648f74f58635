#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hkdv/dispersion.hpp"
#include "hkdv/field.hpp"

namespace hkdv {

// Right-hand side d_x(scale*(u^m + F(u))). F is a short-range perturbation
// with exponent p > m, either the odd power |u|^{p-1}u or a plain integer
// power for integer-p test configurations.
struct NonlinearitySpec {
  int m = 4;
  double scale = 1.0;  // 0 disables the nonlinearity (free flow)
  bool perturbed = false;
  double p = 0.0;
  double coeff = 0.0;
  bool integer_power = false;

  NonlinearitySpec() = default;
  NonlinearitySpec(int m_in, double scale_in);
  static NonlinearitySpec with_perturbation(int m, double p, double coeff,
                                            bool integer_power = false);

  double F(double u) const;
  double F_derivative(double u, int j) const;  // j = 1..3
  double F_antiderivative(double u) const;
  double nonlinear_map(double u) const;  // scale*(u^m + F(u))
  double pad_factor() const;

  // max over samples of |F^(j)(u)| / |u|^{p-j}, j = 0..3 (Remark-style bound
  // check on the data range).
  std::vector<double> derivative_bound_ratios(const std::vector<double>& samples) const;
};

struct StepStats {
  double dt = 0.0;
  long long accepted = 0;
  long long rejected = 0;
  bool filter_on = false;
};

struct SolverState {
  double t = 0.0;
  Field u;
  DispersionModel model;
  NonlinearitySpec nonlin;
  StepStats stats;
};

struct ConservedTriple {
  double mass = 0.0;      // int u dx
  double momentum = 0.0;  // int u^2 dx
  double energy = 0.0;    // int (1/2m)||d_x|^{(m-1)/2}u|^2 - u^{m+1}/(m+1) - Fanti(u)
};

struct VectorFieldDiag {
  Field Ju;        // (x - t|d_x|^{m-1}) u
  Field Lambda_u;  // Ju + m t (u^m + F(u)), the scaling vector field output
  double X_norm = 0.0;
  double Xt_norm = 0.0;
  bool boundary_warning = false;  // >= 1e-8 of mass in the outer 10% of box
};

Field rhs_nonlinear(const Field& u, const NonlinearitySpec& nonlin);

ConservedTriple conserved_quantities(const Field& u, const NonlinearitySpec& nonlin);

VectorFieldDiag vector_fields(const SolverState& state);

// t^{(k+1)/m} * || <t^{-1/m}x>^{-k/(m-1)+(m-2)/(2(m-1))} d_x^k u ||_Linf.
double bootstrap_weighted_sup(const Field& u, double t, int k, int m);

// ||u||_Sigma^s = ||u||_{H^s} + ||x u||_{L^2}.
double sigma_norm(const Field& u, double s);

struct EvolveOptions {
  double tol = 1e-9;      // absolute step-doubling tolerance (spectral L2)
  double dt_init = 1e-2;
  double dt_max = 2.0;
  double dt_min = 1e-12;
  bool filter = false;    // exponential filter on the top 1/6 of modes
};

struct Trajectory {
  std::vector<SolverState> snapshots;
  double max_outer_mass_fraction = 0.0;
  bool wrap_flagged = false;  // outer-10% mass fraction exceeded 1e-8
};

// Single adaptive macro-step: attempts dt, halves on rejection, advances
// state by the accepted step (the dt/2-pair result is kept; no local
// extrapolation, so the scheme stays classical order 4).
void step(SolverState& state, double& dt, const EvolveOptions& opt);

// Fixed-step integration to t_end (no error control); used by order tests.
void evolve_fixed_dt(SolverState& state, double t_end, double dt, bool filter = false);

// Adaptive integration recording snapshots at the given times (must be
// increasing; state.t and t_end are added automatically). The observer, when
// present, is invoked on every recorded snapshot.
Trajectory evolve(SolverState state, double t_end, std::vector<double> snapshot_times,
                  const EvolveOptions& opt,
                  const std::function<void(const SolverState&)>& observer = {});

}  // namespace hkdv
