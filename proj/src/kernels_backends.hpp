#pragma once

#include "convspec/kernels.hpp"

// Private vtable shared by the backend translation units.

namespace convspec::kernels {

struct Backend {
  const char* name;
  Complex (*cdot)(const Complex*, const Complex*, int);
  Complex (*cdot_rev)(const Complex*, const Complex*, int);
  void (*fmadd_real)(Complex*, const double*, const Complex*, int);
  void (*fmadd_real_rev)(Complex*, const double*, const Complex*, int);
  void (*fmadd_rs)(Complex*, Complex, const double*, int);
};

const Backend* scalar_backend();
const Backend* avx2_backend();  // nullptr when unsupported at runtime
const Backend* neon_backend();  // nullptr unless built for aarch64

}  // namespace convspec::kernels
