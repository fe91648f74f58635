#include "hkdv/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hkdv/fft.hpp"

namespace hkdv {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

int smooth_size(int lo) {
  // smallest 2^a 3^b 5^c >= lo (FFTW-friendly padded sizes)
  for (int s = lo;; ++s) {
    int r = s;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return s;
  }
}
}  // namespace

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->n)
    throw std::invalid_argument("Field: values size does not match grid");
}

Field Field::zero(GridPtr grid) {
  std::vector<double> v(grid->n, 0.0);
  return Field(std::move(grid), std::move(v));
}

Field Field::from_function(GridPtr grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid->n);
  for (int j = 0; j < grid->n; ++j) v[j] = f(grid->x(j));
  return Field(std::move(grid), std::move(v));
}

Field Field::from_spectrum(GridPtr grid, const std::vector<cdouble>& spectrum) {
  const Grid& g = *grid;
  if (static_cast<int>(spectrum.size()) != g.num_modes())
    throw std::invalid_argument("Field::from_spectrum: bad spectrum size");
  std::vector<cdouble> hc(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    hc[k] = sign * spectrum[k];
  }
  hc[0] = cdouble(hc[0].real(), 0.0);
  hc[g.nyquist()] = cdouble(hc[g.nyquist()].real(), 0.0);
  std::vector<double> v(g.n);
  fft::inverse_c2r(g.n, hc.data(), v.data());
  const double scale = g.dxi() / kSqrt2Pi;
  for (double& x : v) x *= scale;
  Field out(std::move(grid), std::move(v));
  out.spectrum_ = spectrum;
  out.spectrum_[0] = cdouble(spectrum[0].real(), 0.0);
  out.spectrum_[g.nyquist()] = cdouble(spectrum[g.nyquist()].real(), 0.0);
  out.spectrum_valid_ = true;
  return out;
}

const std::vector<cdouble>& Field::spectrum() const {
  if (!spectrum_valid_) {
    const Grid& g = *grid_;
    spectrum_.assign(g.num_modes(), cdouble(0.0));
    fft::forward_r2c(g.n, values_.data(), spectrum_.data());
    const double scale = g.dx / kSqrt2Pi;
    for (int k = 0; k < g.num_modes(); ++k) {
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      spectrum_[k] *= sign * scale;
    }
    spectrum_valid_ = true;
  }
  return spectrum_;
}

CField CField::zero(GridPtr g) {
  CField f;
  f.grid = std::move(g);
  f.values.assign(f.grid->n, cdouble(0.0));
  return f;
}

double signed_xi(const Grid& g, int k) {
  int kk = (k <= g.n / 2) ? k : k - g.n;
  return 2.0 * kPi * kk / g.length;
}

std::vector<cdouble> analyze_c(const CField& f) {
  const Grid& g = *f.grid;
  std::vector<cdouble> out(g.n);
  fft::forward_c2c(g.n, f.values.data(), out.data());
  const double scale = g.dx / kSqrt2Pi;
  for (int k = 0; k < g.n; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out[k] *= sign * scale;
  }
  return out;
}

CField synthesize_c(GridPtr grid, const std::vector<cdouble>& spectrum) {
  const Grid& g = *grid;
  if (static_cast<int>(spectrum.size()) != g.n)
    throw std::invalid_argument("synthesize_c: bad spectrum size");
  std::vector<cdouble> hc(g.n);
  for (int k = 0; k < g.n; ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    hc[k] = sign * spectrum[k];
  }
  CField out;
  out.grid = std::move(grid);
  out.values.assign(g.n, cdouble(0.0));
  fft::inverse_c2c(g.n, hc.data(), out.values.data());
  const double scale = g.dxi() / kSqrt2Pi;
  for (auto& v : out.values) v *= scale;
  return out;
}

Field multiplier_apply(const Field& f, const std::function<cdouble(double)>& symbol) {
  const Grid& g = f.grid();
  std::vector<cdouble> sym(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) {
    double xi = g.xi(k);
    sym[k] = symbol(xi);
    cdouble neg = symbol(-xi);
    if (std::abs(neg - std::conj(sym[k])) > 1e-12 * (1.0 + std::abs(sym[k])))
      throw std::invalid_argument("multiplier_apply: non-Hermitian symbol for real field");
    if (!std::isfinite(sym[k].real()) || !std::isfinite(sym[k].imag()))
      throw std::invalid_argument("multiplier_apply: symbol not finite on grid mode");
  }
  return multiplier_apply(f, sym);
}

Field multiplier_apply(const Field& f, const std::vector<cdouble>& symbol_on_modes) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  std::vector<cdouble> out(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) out[k] = symbol_on_modes[k] * spec[k];
  out[g.nyquist()] = 0.0;  // unpaired mode
  return Field::from_spectrum(f.grid_ptr(), out);
}

CField multiplier_apply(const CField& f, const std::function<cdouble(double)>& symbol) {
  const Grid& g = *f.grid;
  auto spec = analyze_c(f);
  for (int k = 0; k < g.n; ++k) spec[k] *= (k == g.nyquist()) ? 0.0 : symbol(signed_xi(g, k));
  return synthesize_c(f.grid, spec);
}

Field fractional_derivative(const Field& f, double a) {
  if (a < 0.0) throw std::invalid_argument("fractional_derivative: a must be >= 0");
  if (a == 0.0) return f;
  const Grid& g = f.grid();
  std::vector<cdouble> sym(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) sym[k] = std::pow(std::abs(g.xi(k)), a);
  return multiplier_apply(f, sym);
}

Field derivative(const Field& f, int k) {
  if (k < 0) throw std::invalid_argument("derivative: order must be >= 0");
  if (k == 0) return f;
  const Grid& g = f.grid();
  std::vector<cdouble> sym(g.num_modes());
  for (int j = 0; j < g.num_modes(); ++j) sym[j] = std::pow(cdouble(0.0, g.xi(j)), k);
  return multiplier_apply(f, sym);
}

CField positive_part(const Field& f) {
  const Grid& g = f.grid();
  const auto& half = f.spectrum();
  std::vector<cdouble> full(g.n, cdouble(0.0));
  for (int k = 1; k < g.nyquist(); ++k) full[k] = half[k];
  return synthesize_c(f.grid_ptr(), full);
}

Field dealiased_map(const Field& f, const std::function<double(double)>& map,
                    double pad_factor) {
  const Grid& g = f.grid();
  const int n_pad = smooth_size(static_cast<int>(std::ceil(g.n * pad_factor)));
  const auto& spec = f.spectrum();

  // synthesize on the padded grid (same box, n_pad samples)
  std::vector<cdouble> hc(n_pad / 2 + 1, cdouble(0.0));
  for (int k = 0; k <= g.nyquist(); ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    hc[k] = sign * spec[k];
  }
  std::vector<double> w(n_pad);
  fft::inverse_c2r(n_pad, hc.data(), w.data());
  const double scale_syn = g.dxi() / kSqrt2Pi;
  for (double& x : w) x = map(x * scale_syn);

  std::vector<cdouble> back(n_pad / 2 + 1);
  fft::forward_r2c(n_pad, w.data(), back.data());
  const double dx_pad = g.length / n_pad;
  const double scale_ana = dx_pad / kSqrt2Pi;
  std::vector<cdouble> out(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) {
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out[k] = sign * scale_ana * back[k];
  }
  out[g.nyquist()] = 0.0;
  return Field::from_spectrum(f.grid_ptr(), out);
}

Field dealiased_power(const Field& f, int p) {
  if (p < 2) throw std::invalid_argument("dealiased_power: p must be >= 2");
  return dealiased_map(f, [p](double u) { return std::pow(u, p); }, 0.5 * (p + 1));
}

double lp_sigma(double xi) {
  double a = std::abs(xi);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  double s = a - 1.0;
  return bump(1.0 - s) / (bump(s) + bump(1.0 - s));
}

double lp_sigma_band(double xi, double N) { return lp_sigma(xi / N) - lp_sigma(2.0 * xi / N); }

Field band_project(const Field& f, double N) {
  if (!(N > 0.0)) throw std::invalid_argument("band_project: N must be positive");
  const Grid& g = f.grid();
  std::vector<cdouble> sym(g.num_modes());
  for (int k = 0; k < g.num_modes(); ++k) sym[k] = lp_sigma_band(g.xi(k), N);
  return multiplier_apply(f, sym);
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().dx);
}

double linf_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s = std::max(s, std::abs(v));
  return s;
}

double hs_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  double acc = 0.0;
  for (int k = 0; k < g.num_modes(); ++k) {
    double xi = g.xi(k);
    double w = std::pow(1.0 + xi * xi, s);
    double mult = (k == 0 || k == g.nyquist()) ? 1.0 : 2.0;
    acc += mult * w * std::norm(spec[k]);
  }
  return std::sqrt(acc * g.dxi());
}

double spectral_l2_norm(const Field& f) { return hs_norm(f, 0.0); }

double WeightSpec::weight(double x) const {
  double scale = std::pow(t, -1.0 / m);
  double z = scale * x;
  if (kind == Kind::JapaneseBracket) return std::pow(1.0 + z * z, 0.5 * beta);
  if (!(z > 0.0)) throw std::domain_error("WeightSpec: one-sided power needs t^{-1/m} x > 0");
  return std::pow(z, beta);
}

namespace {
template <typename W>
double weighted_sup_impl(const Field& f, const W& w, const Interval& region) {
  const Grid& g = f.grid();
  double s = 0.0;
  bool seen = false;
  for (int j = 0; j < g.n; ++j) {
    double x = g.x(j);
    if (!region.contains(x)) continue;
    seen = true;
    s = std::max(s, std::abs(w(x) * f[j]));
  }
  if (!seen) throw std::invalid_argument("weighted_sup: empty region on grid");
  return s;
}

template <typename W>
double weighted_l2_impl(const Field& f, const W& w, const Interval& region) {
  const Grid& g = f.grid();
  double s = 0.0;
  bool seen = false;
  for (int j = 0; j < g.n; ++j) {
    double x = g.x(j);
    if (!region.contains(x)) continue;
    seen = true;
    double v = w(x) * f[j];
    s += v * v;
  }
  if (!seen) throw std::invalid_argument("weighted_l2: empty region on grid");
  return std::sqrt(s * g.dx);
}
}  // namespace

double weighted_sup(const Field& f, const std::function<double(double)>& w, const Interval& r) {
  return weighted_sup_impl(f, w, r);
}
double weighted_l2(const Field& f, const std::function<double(double)>& w, const Interval& r) {
  return weighted_l2_impl(f, w, r);
}
double weighted_sup(const Field& f, const WeightSpec& w, const Interval& r) {
  return weighted_sup_impl(f, [&w](double x) { return w.weight(x); }, r);
}
double weighted_l2(const Field& f, const WeightSpec& w, const Interval& r) {
  return weighted_l2_impl(f, [&w](double x) { return w.weight(x); }, r);
}

double mass(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().dx;
}

double inner(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner: grid mismatch");
  double s = 0.0;
  for (int j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s * a.grid().dx;
}

double mass_fraction_outer(const Field& f, double outer_fraction) {
  const Grid& g = f.grid();
  double cutoff = 0.5 * g.length * (1.0 - outer_fraction);
  double outer = 0.0, total = 0.0;
  for (int j = 0; j < g.n; ++j) {
    double v = f[j] * f[j];
    total += v;
    if (std::abs(g.x(j)) >= cutoff) outer += v;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double eval_at(const Field& f, double x) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  cdouble acc = spec[0];
  for (int k = 1; k < g.nyquist(); ++k) {
    double xi = g.xi(k);
    acc += 2.0 * spec[k] * std::exp(cdouble(0.0, x * xi));
  }
  acc += spec[g.nyquist()] * std::exp(cdouble(0.0, x * g.xi(g.nyquist())));
  return acc.real() * g.dxi() / kSqrt2Pi;
}

std::vector<double> eval_at(const Field& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = eval_at(f, xs[i]);
  return out;
}

cdouble u_hat_at(const Field& f, double xi) {
  const Grid& g = f.grid();
  cdouble acc(0.0);
  for (int j = 0; j < g.n; ++j) acc += f[j] * std::exp(cdouble(0.0, -g.x(j) * xi));
  return acc * (g.dx / kSqrt2Pi);
}

Field operator+(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("Field+: grid mismatch");
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] + b[j];
  return Field(a.grid_ptr(), std::move(v));
}

Field operator-(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("Field-: grid mismatch");
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] - b[j];
  return Field(a.grid_ptr(), std::move(v));
}

Field operator*(double c, const Field& f) {
  std::vector<double> v(f.size());
  for (int j = 0; j < f.size(); ++j) v[j] = c * f[j];
  return Field(f.grid_ptr(), std::move(v));
}

Field pointwise_multiply(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("pointwise_multiply: grid mismatch");
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] * b[j];
  return Field(a.grid_ptr(), std::move(v));
}

Field multiply_by_x(const Field& f) {
  const Grid& g = f.grid();
  std::vector<double> v(f.size());
  for (int j = 0; j < f.size(); ++j) v[j] = g.x(j) * f[j];
  return Field(f.grid_ptr(), std::move(v));
}

}  // namespace hkdv
