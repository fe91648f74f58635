#pragma once

#include <complex>
#include <vector>

namespace hkdv {

// Thin wrapper around FFTW. Plans are cached per transform size in
// thread-local storage (plan creation is serialized globally; execution on
// thread-private buffers needs no locking). FFTW_ESTIMATE keeps planning
// deterministic across runs.
namespace fft {

// Unnormalized DFT, real input, half-complex output of size n/2+1:
//   out[k] = sum_j in[j] e^{-2pi i jk/n},  k = 0..n/2.
void forward_r2c(int n, const double* in, std::complex<double>* out);

// Unnormalized inverse of forward_r2c (result scaled by n relative to the
// original samples is NOT applied here; this returns sum_k with Hermitian
// completion, i.e. c2r(r2c(u)) = n*u).
void inverse_c2r(int n, const std::complex<double>* in, double* out);

// Unnormalized complex DFT, out[k] = sum_j in[j] e^{-2pi i jk/n}.
void forward_c2c(int n, const std::complex<double>* in, std::complex<double>* out);

// Unnormalized inverse complex DFT, out[j] = sum_k in[k] e^{+2pi i jk/n}.
void inverse_c2c(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace fft
}  // namespace hkdv
