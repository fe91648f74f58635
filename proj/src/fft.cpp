#include "hkdv/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace hkdv {
namespace fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct PlanSet {
  int n = 0;
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;   // n/2+1 for r2c
  fftw_complex* cin = nullptr;        // n, for c2c
  fftw_complex* cout = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan c2c_f = nullptr;
  fftw_plan c2c_b = nullptr;

  explicit PlanSet(int n_) : n(n_) {
    real_buf = fftw_alloc_real(n);
    cplx_buf = fftw_alloc_complex(n / 2 + 1);
    cin = fftw_alloc_complex(n);
    cout = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_ESTIMATE);
    c2c_f = fftw_plan_dft_1d(n, cin, cout, FFTW_FORWARD, FFTW_ESTIMATE);
    c2c_b = fftw_plan_dft_1d(n, cin, cout, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_destroy_plan(c2c_f);
    fftw_destroy_plan(c2c_b);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
    fftw_free(cin);
    fftw_free(cout);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
  thread_local std::map<int, std::unique_ptr<PlanSet>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
  return *it->second;
}

}  // namespace

void forward_r2c(int n, const double* in, std::complex<double>* out) {
  PlanSet& p = plans_for(n);
  std::memcpy(p.real_buf, in, sizeof(double) * n);
  fftw_execute(p.r2c);
  std::memcpy(out, p.cplx_buf, sizeof(fftw_complex) * (n / 2 + 1));
}

void inverse_c2r(int n, const std::complex<double>* in, double* out) {
  PlanSet& p = plans_for(n);
  std::memcpy(p.cplx_buf, in, sizeof(fftw_complex) * (n / 2 + 1));
  fftw_execute(p.c2r);
  std::memcpy(out, p.real_buf, sizeof(double) * n);
}

void forward_c2c(int n, const std::complex<double>* in, std::complex<double>* out) {
  PlanSet& p = plans_for(n);
  std::memcpy(p.cin, in, sizeof(fftw_complex) * n);
  fftw_execute(p.c2c_f);
  std::memcpy(out, p.cout, sizeof(fftw_complex) * n);
}

void inverse_c2c(int n, const std::complex<double>* in, std::complex<double>* out) {
  PlanSet& p = plans_for(n);
  std::memcpy(p.cin, in, sizeof(fftw_complex) * n);
  fftw_execute(p.c2c_b);
  std::memcpy(out, p.cout, sizeof(fftw_complex) * n);
}

}  // namespace fft
}  // namespace hkdv
