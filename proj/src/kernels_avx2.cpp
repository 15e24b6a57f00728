#include "kernels_backends.hpp"

// AVX2 + FMA lane layout: one __m256d carries two complexes [re0 im0 re1 im1].
// Complex products are split into a straight lane product (real combination)
// and a swapped-lane product (imaginary combination); the horizontal signs
// are applied once per dot product, outside the loop.
//
// This translation unit is the only one compiled with -mavx2 -mfma; the
// dispatcher checks CPU support before handing out the table.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace convspec::kernels {
namespace {

inline const double* dptr(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(Complex* p) { return reinterpret_cast<double*>(p); }

Complex a_cdot(const Complex* a, const Complex* b, int m) {
  __m256d accA = _mm256_setzero_pd();
  __m256d accB = _mm256_setzero_pd();
  int j = 0;
  for (; j + 2 <= m; j += 2) {
    __m256d va = _mm256_loadu_pd(dptr(a + j));
    __m256d vb = _mm256_loadu_pd(dptr(b + j));
    accA = _mm256_fmadd_pd(va, vb, accA);
    accB = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), accB);
  }
  alignas(32) double ra[4], rb[4];
  _mm256_store_pd(ra, accA);
  _mm256_store_pd(rb, accB);
  double re = ra[0] - ra[1] + ra[2] - ra[3];
  double im = rb[0] + rb[1] + rb[2] + rb[3];
  for (; j < m; ++j) {
    re += a[j].real() * b[j].real() - a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() + a[j].imag() * b[j].real();
  }
  return {re, im};
}

Complex a_cdot_rev(const Complex* a, const Complex* b, int m) {
  __m256d accA = _mm256_setzero_pd();
  __m256d accB = _mm256_setzero_pd();
  int j = 0;
  for (; j + 2 <= m; j += 2) {
    // pair (a[m-1-j], a[m-2-j]) sits reversed in memory; swap the 128-bit halves
    __m256d va = _mm256_loadu_pd(dptr(a + (m - 2 - j)));
    va = _mm256_permute2f128_pd(va, va, 1);
    __m256d vb = _mm256_loadu_pd(dptr(b + j));
    accA = _mm256_fmadd_pd(va, vb, accA);
    accB = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), accB);
  }
  alignas(32) double ra[4], rb[4];
  _mm256_store_pd(ra, accA);
  _mm256_store_pd(rb, accB);
  double re = ra[0] - ra[1] + ra[2] - ra[3];
  double im = rb[0] + rb[1] + rb[2] + rb[3];
  for (; j < m; ++j) {
    Complex aj = a[m - 1 - j];
    re += aj.real() * b[j].real() - aj.imag() * b[j].imag();
    im += aj.real() * b[j].imag() + aj.imag() * b[j].real();
  }
  return {re, im};
}

// [r0, r1] -> [r0, r0, r1, r1]
inline __m256d spread2(const double* r) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(r)), 0x50);
}

void a_fmadd_real(Complex* dst, const double* r, const Complex* z, int m) {
  int j = 0;
  for (; j + 2 <= m; j += 2) {
    __m256d vd = _mm256_loadu_pd(dptr(dst + j));
    vd = _mm256_fmadd_pd(spread2(r + j), _mm256_loadu_pd(dptr(z + j)), vd);
    _mm256_storeu_pd(dptr(dst + j), vd);
  }
  for (; j < m; ++j) dst[j] += r[j] * z[j];
}

void a_fmadd_real_rev(Complex* dst, const double* r, const Complex* z, int m) {
  int j = 0;
  for (; j + 2 <= m; j += 2) {
    // want [r[m-1-j], r[m-1-j], r[m-2-j], r[m-2-j]]
    __m256d vr = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(r + (m - 2 - j))), 0x05);
    __m256d vd = _mm256_loadu_pd(dptr(dst + j));
    vd = _mm256_fmadd_pd(vr, _mm256_loadu_pd(dptr(z + j)), vd);
    _mm256_storeu_pd(dptr(dst + j), vd);
  }
  for (; j < m; ++j) dst[j] += r[m - 1 - j] * z[j];
}

void a_fmadd_rs(Complex* dst, Complex alpha, const double* r, int m) {
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  int j = 0;
  for (; j + 2 <= m; j += 2) {
    __m256d vd = _mm256_loadu_pd(dptr(dst + j));
    vd = _mm256_fmadd_pd(va, spread2(r + j), vd);
    _mm256_storeu_pd(dptr(dst + j), vd);
  }
  for (; j < m; ++j) dst[j] += alpha * r[j];
}

const Backend kAvx2 = {"avx2", a_cdot, a_cdot_rev, a_fmadd_real, a_fmadd_real_rev, a_fmadd_rs};

}  // namespace

const Backend* avx2_backend() { return &kAvx2; }

}  // namespace convspec::kernels

#else

namespace convspec::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace convspec::kernels

#endif
