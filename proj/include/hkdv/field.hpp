#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hkdv/grid.hpp"

namespace hkdv {

using cdouble = std::complex<double>;

// Real-valued grid function with a lazily cached half-spectrum under the
// unitary convention
//   u_hat(xi_k) = (dx/sqrt(2pi)) * sum_j u(x_j) e^{-i x_j xi_k},
// which matches the continuum F up to periodic quadrature. Conjugate
// symmetry u_hat(-xi) = conj(u_hat(xi)) is implicit in the half storage
// (k = 0..n/2).
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, std::vector<double> values);

  static Field zero(GridPtr grid);
  static Field from_function(GridPtr grid, const std::function<double(double)>& f);
  // Half-spectrum of size n/2+1; imaginary parts of modes 0 and n/2 must be
  // negligible (real field).
  static Field from_spectrum(GridPtr grid, const std::vector<cdouble>& spectrum);

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  int size() const { return grid_ ? grid_->n : 0; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<cdouble>& spectrum() const;

  double operator[](int j) const { return values_[j]; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  mutable std::vector<cdouble> spectrum_;
  mutable bool spectrum_valid_ = false;
};

// Complex-valued grid function (wave packets, positive-frequency parts).
// Spectrum storage is the full signed-mode set, index k <-> frequency
// xi_k = 2 pi k / L for k <= n/2 and 2 pi (k - n) / L above.
struct CField {
  GridPtr grid;
  std::vector<cdouble> values;

  static CField zero(GridPtr g);
  int size() const { return grid ? grid->n : 0; }
};

double signed_xi(const Grid& g, int k);  // full-spectrum index -> frequency

std::vector<cdouble> analyze_c(const CField& f);
CField synthesize_c(GridPtr grid, const std::vector<cdouble>& spectrum);

// --- multipliers ------------------------------------------------------------

// Pointwise spectral multiplier. The symbol must satisfy
// symbol(-xi) = conj(symbol(xi)) on the grid modes (real output); violations
// throw std::invalid_argument. The Nyquist mode is always zeroed.
Field multiplier_apply(const Field& f, const std::function<cdouble(double)>& symbol);
// Same, with the symbol pre-evaluated on modes k = 0..n/2.
Field multiplier_apply(const Field& f, const std::vector<cdouble>& symbol_on_modes);

CField multiplier_apply(const CField& f, const std::function<cdouble(double)>& symbol);

Field fractional_derivative(const Field& f, double a);  // |d/dx|^a
Field derivative(const Field& f, int k);                // (d/dx)^k

// Positive-frequency half u^+ = F^{-1}[1_{xi>0} u_hat].
CField positive_part(const Field& f);

// --- nonlinear products -----------------------------------------------------

// Pointwise p-th power on a grid zero-padded by factor >= (p+1)/2, truncated
// back to the resolved band; alias-free for the retained modes.
Field dealiased_power(const Field& f, int p);

// Pointwise map evaluated on a grid padded by pad_factor, then truncated.
// Used for the combined u^m + F(u) right-hand side.
Field dealiased_map(const Field& f, const std::function<double(double)>& map,
                    double pad_factor);

// --- Littlewood-Paley -------------------------------------------------------

double lp_sigma(double xi);             // smooth, 1 on |xi|<=1, 0 on |xi|>=2
double lp_sigma_band(double xi, double N);  // sigma(xi/N) - sigma(2 xi/N)
Field band_project(const Field& f, double N);

// --- norms ------------------------------------------------------------------

struct Interval {
  double lo = -1e300;
  double hi = 1e300;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

double l2_norm(const Field& f);
double linf_norm(const Field& f);
double hs_norm(const Field& f, double s);   // <xi>^s multiplier norm
double spectral_l2_norm(const Field& f);    // sqrt(sum |u_hat|^2 dxi), = L2

struct WeightSpec {
  enum class Kind { JapaneseBracket, OneSidedPower };
  double t = 1.0;
  int m = 4;
  double beta = 0.0;
  Kind kind = Kind::JapaneseBracket;

  double weight(double x) const;
};

// Throw std::invalid_argument when no grid point lies in the region.
double weighted_sup(const Field& f, const std::function<double(double)>& w,
                    const Interval& region);
double weighted_l2(const Field& f, const std::function<double(double)>& w,
                   const Interval& region);
double weighted_sup(const Field& f, const WeightSpec& w, const Interval& region);
double weighted_l2(const Field& f, const WeightSpec& w, const Interval& region);

double mass(const Field& f);                       // int u dx
double inner(const Field& a, const Field& b);      // int a b dx
double mass_fraction_outer(const Field& f, double outer_fraction);

// --- pointwise evaluation ---------------------------------------------------

// Trigonometric interpolation of the band-limited grid function at x.
double eval_at(const Field& f, double x);
std::vector<double> eval_at(const Field& f, const std::vector<double>& xs);

// u_hat at arbitrary xi: (dx/sqrt(2pi)) sum_j u_j e^{-i x_j xi}.
cdouble u_hat_at(const Field& f, double xi);

// --- arithmetic -------------------------------------------------------------

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& f);
Field pointwise_multiply(const Field& a, const Field& b);  // aliased product
Field multiply_by_x(const Field& f);  // centered box coordinate

}  // namespace hkdv
