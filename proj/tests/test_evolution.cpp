#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hkdv/evolution.hpp"

using namespace hkdv;

namespace {
constexpr double kPi = 3.14159265358979323846;

SolverState gaussian_state(GridPtr g, int m, double amp, double width = 1.0,
                           double scale = 1.0) {
  SolverState s;
  s.t = 0.0;
  s.u = Field::from_function(g, [amp, width](double x) {
    return amp * std::exp(-0.5 * x * x / (width * width));
  });
  s.model = DispersionModel(m);
  s.nonlin = NonlinearitySpec(m, scale);
  return s;
}
}  // namespace

TEST_CASE("rhs basics") {
  auto g = make_grid(128, 2.0 * kPi);
  NonlinearitySpec nl(4, 1.0);

  Field z = Field::zero(g);
  CHECK(linf_norm(rhs_nonlinear(z, nl)) == 0.0);

  Field c = Field::from_function(g, [](double) { return 0.3; });
  CHECK(linf_norm(rhs_nonlinear(c, nl)) < 1e-13);

  Field f = Field::from_function(g, [](double x) { return 0.5 * std::sin(x) + 0.2 * std::cos(3 * x); });
  CHECK(std::abs(mass(rhs_nonlinear(f, nl))) < 1e-13);
}

TEST_CASE("perturbation spec") {
  auto nl = NonlinearitySpec::with_perturbation(4, 4.2, 0.5);
  CHECK(nl.F(0.1) == doctest::Approx(0.5 * std::pow(0.1, 4.2)));
  CHECK(nl.F(-0.1) == doctest::Approx(-0.5 * std::pow(0.1, 4.2)));
  // derivative bounds |F^(j)(u)| <= C |u|^{p-j} hold with C = p(p-1)..(p-j+1)/2
  std::vector<double> samples;
  for (double u = -0.5; u <= 0.5; u += 0.01) samples.push_back(u);
  auto ratios = nl.derivative_bound_ratios(samples);
  CHECK(ratios[0] <= 0.5 + 1e-12);
  CHECK(ratios[1] <= 0.5 * 4.2 + 1e-12);
  CHECK(ratios[2] <= 0.5 * 4.2 * 3.2 + 1e-12);
  CHECK(ratios[3] <= 0.5 * 4.2 * 3.2 * 2.2 + 1e-12);
  CHECK_THROWS_AS(NonlinearitySpec::with_perturbation(4, 3.9, 0.5), std::invalid_argument);
}

TEST_CASE("conserved quantities closed forms and oracle") {
  auto g = make_grid(128, 2.0 * kPi);
  NonlinearitySpec nl3(3, 1.0);
  Field z = Field::zero(g);
  auto c0 = conserved_quantities(z, nl3);
  CHECK(c0.mass == 0.0);
  CHECK(c0.momentum == 0.0);
  CHECK(c0.energy == 0.0);

  Field cosx = Field::from_function(g, [](double x) { return std::cos(x); });
  auto c1 = conserved_quantities(cosx, nl3);
  CHECK(std::abs(c1.mass) < 1e-13);
  CHECK(c1.momentum == doctest::Approx(kPi).epsilon(1e-12));

  // energy of a gaussian vs direct spectral-sum + dense quadrature oracle
  auto g2 = make_grid(512, 60.0);
  NonlinearitySpec nl4(4, 1.0);
  Field f = Field::from_function(g2, [](double x) { return 0.4 * std::exp(-0.5 * x * x); });
  auto c2 = conserved_quantities(f, nl4);
  const auto& spec = f.spectrum();
  double kin = 0.0;
  for (int k = 0; k < g2->num_modes(); ++k) {
    double mult = (k == 0 || k == g2->nyquist()) ? 1.0 : 2.0;
    kin += mult * std::pow(std::abs(g2->xi(k)), 3) * std::norm(spec[k]);
  }
  kin *= g2->dxi() / 8.0;
  // u decays to ~1e-196 at the box edge; plain quadrature of u^5 on a fine
  // evaluation grid is alias-free to machine precision
  double pot = 0.0;
  int fine = 8192;
  double dxf = g2->length / fine;
  for (int j = 0; j < fine; ++j) {
    double x = -0.5 * g2->length + j * dxf;
    double u = eval_at(f, x);
    pot += std::pow(u, 5) / 5.0 * dxf;
  }
  CHECK(c2.energy == doctest::Approx(kin - pot).epsilon(1e-10));
}

TEST_CASE("zero data stays zero and linear limit matches propagate") {
  auto g = make_grid(256, 100.0);
  SolverState s = gaussian_state(g, 4, 0.0);
  EvolveOptions opt;
  auto traj = evolve(s, 1.0, {}, opt);
  CHECK(linf_norm(traj.snapshots.back().u) == 0.0);

  // nonlinearity disabled: IFRK4 equals the exact propagator to 1e-10
  SolverState lin = gaussian_state(g, 4, 0.5, 1.0, 0.0);
  auto traj2 = evolve(lin, 10.0, {}, opt);
  Field exact = propagate(lin.u, 10.0, lin.model);
  CHECK(l2_norm(traj2.snapshots.back().u - exact) <= 1e-10);
}

TEST_CASE("step doubling convergence order approx 4") {
  auto g = make_grid(256, 16.0 * kPi);
  SolverState base = gaussian_state(g, 4, 0.6, 2.0);
  double T = 2.0;

  SolverState ref = base;
  evolve_fixed_dt(ref, T, T / 2048.0);

  double errs[2];
  int idx = 0;
  for (double dt : {T / 64.0, T / 128.0}) {
    SolverState s = base;
    evolve_fixed_dt(s, T, dt);
    errs[idx++] = l2_norm(s.u - ref.u);
  }
  double order = std::log2(errs[0] / errs[1]);
  CHECK(order > 3.7);
  CHECK(order < 4.3);
}

TEST_CASE("mass exactly conserved, momentum/energy drift shrink ~16x") {
  auto g = make_grid(256, 16.0 * kPi);
  SolverState s = gaussian_state(g, 4, 0.6, 2.0);
  auto c_initial = conserved_quantities(s.u, s.nonlin);

  SolverState a = s;
  evolve_fixed_dt(a, 2.0, 1.0 / 32.0);
  auto ca = conserved_quantities(a.u, a.nonlin);
  CHECK(std::abs(ca.mass - c_initial.mass) <= 1e-13 * std::abs(c_initial.mass));

  SolverState b = s;
  evolve_fixed_dt(b, 2.0, 1.0 / 64.0);
  auto cb = conserved_quantities(b.u, b.nonlin);

  double drift_a = std::abs(ca.momentum - c_initial.momentum);
  double drift_b = std::abs(cb.momentum - c_initial.momentum);
  double ratio_p = drift_a / drift_b;
  CHECK(ratio_p > 8.0);
  CHECK(ratio_p < 32.0);

  double de_a = std::abs(ca.energy - c_initial.energy);
  double de_b = std::abs(cb.energy - c_initial.energy);
  double ratio_e = de_a / de_b;
  CHECK(ratio_e > 8.0);
  CHECK(ratio_e < 32.0);
}

TEST_CASE("vector field diagnostics") {
  auto g = make_grid(256, 100.0);
  SolverState s = gaussian_state(g, 4, 0.3);
  s.t = 0.0;
  auto d0 = vector_fields(s);
  Field xu = multiply_by_x(s.u);
  CHECK(l2_norm(d0.Ju - xu) <= 1e-12 * l2_norm(xu));
  CHECK(d0.X_norm >= l2_norm(s.u));

  SolverState z = s;
  z.u = Field::zero(g);
  auto dz = vector_fields(z);
  CHECK(l2_norm(dz.Ju) == 0.0);
  CHECK(l2_norm(dz.Lambda_u) == 0.0);
  CHECK(dz.Xt_norm == 0.0);
}

TEST_CASE("bootstrap weighted sup basics") {
  auto g = make_grid(256, 100.0);
  Field z = Field::zero(g);
  CHECK(bootstrap_weighted_sup(z, 2.0, 0, 4) == 0.0);
  CHECK_THROWS_AS(bootstrap_weighted_sup(z, 2.0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_weighted_sup(z, 0.5, 0, 4), std::invalid_argument);
}

TEST_CASE("time reversal symmetry") {
  // u(t,x) -> u(-t,-x) solves the equation; composing the mirrored
  // evolution twice with mirrors recovers the initial state.
  auto g = make_grid(256, 16.0 * kPi);
  SolverState s = gaussian_state(g, 4, 0.5, 2.0);
  double T = 1.0;
  EvolveOptions opt;
  opt.tol = 1e-11;

  auto mirror = [&](const Field& f) {
    std::vector<double> v(f.size());
    for (int j = 0; j < f.size(); ++j) {
      // x_j = -L/2 + j dx; the mirror of sample j sits at index (n - j) mod n
      int jm = (f.size() - j) % f.size();
      v[j] = f[jm];
    }
    return Field(f.grid_ptr(), std::move(v));
  };

  SolverState back = s;
  back.u = mirror(s.u);
  auto t1 = evolve(back, T, {}, opt);
  SolverState fwd;
  fwd.t = 0.0;
  fwd.u = mirror(t1.snapshots.back().u);
  fwd.model = s.model;
  fwd.nonlin = s.nonlin;
  auto t2 = evolve(fwd, T, {}, opt);
  CHECK(l2_norm(t2.snapshots.back().u - s.u) <= 1e-8);
}

TEST_CASE("scaling symmetry lambda = 2") {
  // if u solves the equation then lam*u(lam^m t, lam*x) does; run rescaled
  // data and compare at matched times
  auto g = make_grid(512, 32.0 * kPi);
  int m = 4;
  double lam = 2.0;
  EvolveOptions opt;
  opt.tol = 1e-11;

  SolverState coarse = gaussian_state(g, m, 0.4, 4.0);
  double T_long = 1.6;
  auto base = evolve(coarse, T_long, {}, opt);

  auto g2 = make_grid(512, 16.0 * kPi);
  SolverState fine;
  fine.t = 0.0;
  fine.u = Field::from_function(g2, [lam](double x) {
    return lam * 0.4 * std::exp(-0.5 * (lam * x) * (lam * x) / 16.0);
  });
  fine.model = DispersionModel(m);
  fine.nonlin = NonlinearitySpec(m, 1.0);
  auto scaled = evolve(fine, T_long / std::pow(lam, m), {}, opt);

  // compare lam * u(lam^m t, lam x) with the rescaled run at its final time
  const Field& uu = base.snapshots.back().u;
  const Field& vv = scaled.snapshots.back().u;
  double max_diff = 0.0;
  for (int j = 0; j < g2->n; ++j) {
    double x = g2->x(j);
    double expect = lam * eval_at(uu, lam * x);
    max_diff = std::max(max_diff, std::abs(vv[j] - expect));
  }
  CHECK(max_diff <= 1e-7);
}
