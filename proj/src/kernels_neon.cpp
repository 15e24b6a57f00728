#include "kernels_backends.hpp"

// NEON: one float64x2_t per complex [re im]. Mirrors the scalar loops; the
// swapped-lane trick matches the AVX2 unit. aarch64 NEON is baseline, so no
// runtime probe is needed.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace convspec::kernels {
namespace {

inline const double* dptr(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(Complex* p) { return reinterpret_cast<double*>(p); }

Complex n_cdot(const Complex* a, const Complex* b, int m) {
  float64x2_t accA = vdupq_n_f64(0.0);
  float64x2_t accB = vdupq_n_f64(0.0);
  for (int j = 0; j < m; ++j) {
    float64x2_t va = vld1q_f64(dptr(a + j));
    float64x2_t vb = vld1q_f64(dptr(b + j));
    accA = vfmaq_f64(accA, va, vb);
    accB = vfmaq_f64(accB, va, vextq_f64(vb, vb, 1));
  }
  return {vgetq_lane_f64(accA, 0) - vgetq_lane_f64(accA, 1),
          vgetq_lane_f64(accB, 0) + vgetq_lane_f64(accB, 1)};
}

Complex n_cdot_rev(const Complex* a, const Complex* b, int m) {
  float64x2_t accA = vdupq_n_f64(0.0);
  float64x2_t accB = vdupq_n_f64(0.0);
  for (int j = 0; j < m; ++j) {
    float64x2_t va = vld1q_f64(dptr(a + (m - 1 - j)));
    float64x2_t vb = vld1q_f64(dptr(b + j));
    accA = vfmaq_f64(accA, va, vb);
    accB = vfmaq_f64(accB, va, vextq_f64(vb, vb, 1));
  }
  return {vgetq_lane_f64(accA, 0) - vgetq_lane_f64(accA, 1),
          vgetq_lane_f64(accB, 0) + vgetq_lane_f64(accB, 1)};
}

void n_fmadd_real(Complex* dst, const double* r, const Complex* z, int m) {
  for (int j = 0; j < m; ++j) {
    float64x2_t vd = vld1q_f64(dptr(dst + j));
    vd = vfmaq_f64(vd, vdupq_n_f64(r[j]), vld1q_f64(dptr(z + j)));
    vst1q_f64(dptr(dst + j), vd);
  }
}

void n_fmadd_real_rev(Complex* dst, const double* r, const Complex* z, int m) {
  for (int j = 0; j < m; ++j) {
    float64x2_t vd = vld1q_f64(dptr(dst + j));
    vd = vfmaq_f64(vd, vdupq_n_f64(r[m - 1 - j]), vld1q_f64(dptr(z + j)));
    vst1q_f64(dptr(dst + j), vd);
  }
}

void n_fmadd_rs(Complex* dst, Complex alpha, const double* r, int m) {
  const float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(&alpha));
  for (int j = 0; j < m; ++j) {
    float64x2_t vd = vld1q_f64(dptr(dst + j));
    vd = vfmaq_f64(vd, va, vdupq_n_f64(r[j]));
    vst1q_f64(dptr(dst + j), vd);
  }
}

const Backend kNeon = {"neon", n_cdot, n_cdot_rev, n_fmadd_real, n_fmadd_real_rev, n_fmadd_rs};

}  // namespace

const Backend* neon_backend() { return &kNeon; }

}  // namespace convspec::kernels

#else

namespace convspec::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace convspec::kernels

#endif
