#pragma once

#include <string>

#include "convspec/grid.hpp"

// Hot inner loops, dispatched once at startup to the widest instruction set
// the machine supports. Every variant computes bit-compatible math (fused
// multiply-adds may differ in the last ulps; the dispatch is fixed for the
// lifetime of the process, so results are reproducible run to run).
// Override with CONVSPEC_KERNELS=scalar|avx2|neon.

namespace convspec::kernels {

// sum_j a[j] * b[j]
Complex cdot(const Complex* a, const Complex* b, int m);

// sum_j a[m-1-j] * b[j]  (correlation order; the convolution workhorse)
Complex cdot_rev(const Complex* a, const Complex* b, int m);

// dst[j] += r[j] * z[j] for real weights r
void fmadd_real(Complex* dst, const double* r, const Complex* z, int m);

// dst[j] += r[m-1-j] * z[j]
void fmadd_real_rev(Complex* dst, const double* r, const Complex* z, int m);

// dst[j] += alpha * r[j] for a complex scalar alpha and real samples r
void fmadd_rs(Complex* dst, Complex alpha, const double* r, int m);

const std::string& active_backend();
bool force_backend(const std::string& name);  // false if unavailable on this machine

}  // namespace convspec::kernels
