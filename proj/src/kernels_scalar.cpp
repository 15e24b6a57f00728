#include "kernels_backends.hpp"

// Reference implementations. Every other backend must agree with these to
// rounding error; the equivalence test enforces it.

namespace convspec::kernels {
namespace {

Complex s_cdot(const Complex* a, const Complex* b, int m) {
  Complex acc(0.0, 0.0);
  for (int j = 0; j < m; ++j) acc += a[j] * b[j];
  return acc;
}

Complex s_cdot_rev(const Complex* a, const Complex* b, int m) {
  Complex acc(0.0, 0.0);
  for (int j = 0; j < m; ++j) acc += a[m - 1 - j] * b[j];
  return acc;
}

void s_fmadd_real(Complex* dst, const double* r, const Complex* z, int m) {
  for (int j = 0; j < m; ++j) dst[j] += r[j] * z[j];
}

void s_fmadd_real_rev(Complex* dst, const double* r, const Complex* z, int m) {
  for (int j = 0; j < m; ++j) dst[j] += r[m - 1 - j] * z[j];
}

void s_fmadd_rs(Complex* dst, Complex alpha, const double* r, int m) {
  for (int j = 0; j < m; ++j) dst[j] += alpha * r[j];
}

const Backend kScalar = {"scalar", s_cdot, s_cdot_rev, s_fmadd_real, s_fmadd_real_rev, s_fmadd_rs};

}  // namespace

const Backend* scalar_backend() { return &kScalar; }

}  // namespace convspec::kernels
