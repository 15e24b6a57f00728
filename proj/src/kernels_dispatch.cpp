#include <cstdlib>
#include <string>

#include "kernels_backends.hpp"

namespace convspec::kernels {
namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend* lookup(const std::string& name) {
  if (name == "scalar") return scalar_backend();
  if (name == "avx2") return cpu_has_avx2() ? avx2_backend() : nullptr;
  if (name == "neon") return neon_backend();
  return nullptr;
}

const Backend* pick_default() {
  if (const char* env = std::getenv("CONVSPEC_KERNELS")) {
    if (const Backend* b = lookup(env)) return b;
    // an unusable request falls back to scalar rather than failing startup
    return scalar_backend();
  }
  if (cpu_has_avx2()) return avx2_backend();
  if (const Backend* b = neon_backend()) return b;
  return scalar_backend();
}

const Backend*& current() {
  static const Backend* b = pick_default();
  return b;
}

}  // namespace

const std::string& active_backend() {
  static std::string name;
  name = current()->name;
  return name;
}

bool force_backend(const std::string& name) {
  const Backend* b = lookup(name);
  if (!b) return false;
  current() = b;
  return true;
}

Complex cdot(const Complex* a, const Complex* b, int m) { return current()->cdot(a, b, m); }
Complex cdot_rev(const Complex* a, const Complex* b, int m) { return current()->cdot_rev(a, b, m); }
void fmadd_real(Complex* dst, const double* r, const Complex* z, int m) {
  current()->fmadd_real(dst, r, z, m);
}
void fmadd_real_rev(Complex* dst, const double* r, const Complex* z, int m) {
  current()->fmadd_real_rev(dst, r, z, m);
}
void fmadd_rs(Complex* dst, Complex alpha, const double* r, int m) {
  current()->fmadd_rs(dst, alpha, r, m);
}

}  // namespace convspec::kernels
