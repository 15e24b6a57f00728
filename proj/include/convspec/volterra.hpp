#pragma once

#include <vector>

#include "convspec/grid.hpp"

// Convolution algebra on [0, pi] and the triangular transformation kernel
// built from the convolution powers of the generator N. All quadrature is
// trapezoid on the shared uniform grid; oscillatory factors go through the
// moment-exact routines in oscint.

namespace convspec {

// (a*b)(x) = int_0^x a(x-t) b(t) dt; (a*b)(0) = 0.
SampledFunction conv(const SampledFunction& a, const SampledFunction& b);

// p[j] holds N^{*(j+1)}; power(nu) is 1-based.
struct ConvPowerStack {
  std::vector<SampledFunction> p;

  int count() const { return static_cast<int>(p.size()); }
  const SampledFunction& power(int nu) const { return p[static_cast<size_t>(nu - 1)]; }
};

// nu_max <= 0 selects the count adaptively: powers are added until
// pi^nu/nu! * max|N^{*nu}| drops below 1e-12 * max(1, max|N|), capped at 60.
ConvPowerStack conv_powers(const SampledFunction& N, int nu_max = 0);

// M = 2N - int_0^x int_0^t (N*N); the inverse direction solves the same
// discrete relation node by node (the node equation is linear in N_i).
SampledFunction n_to_m(const SampledFunction& N);
SampledFunction m_to_n(const SampledFunction& M);

// Lower-triangular array over the grid, packed by rows: (i, j), 0 <= j <= i <= n.
struct TriangularKernel {
  Grid grid;
  std::vector<Complex> v;

  explicit TriangularKernel(Grid g)
      : grid(g), v(static_cast<size_t>(g.size()) * (g.size() + 1) / 2, Complex(0.0, 0.0)) {}
  Complex& at(int i, int j) { return v[static_cast<size_t>(i) * (i + 1) / 2 + j]; }
  Complex at(int i, int j) const { return v[static_cast<size_t>(i) * (i + 1) / 2 + j]; }
  const Complex* row(int i) const { return &v[static_cast<size_t>(i) * (i + 1) / 2]; }
};

// P(x, t) = sum_nu (x-t)^nu / nu! * N^{*nu}(t); vanishes on the diagonal.
TriangularKernel transformation_kernel(const SampledFunction& N, int nu_max = 0);

// P and its x-derivative slice; the derivative shifts the power series by one.
struct KernelRep {
  TriangularKernel P, Px;
};
KernelRep kernel_rep(const SampledFunction& N, int nu_max = 0);

// Slices at x = pi of the four kernels appearing in the boundary-value
// representation of the characteristic function.
struct PiSlices {
  SampledFunction P, R, Q, K;
};
PiSlices kernels_at_pi(const SampledFunction& N, int nu_max = 0);

// Fundamental solutions S (sine-type) and C (cosine-type) and their
// derivatives at node i, evaluated through the kernel representations.
Complex eval_s(const KernelRep& rep, int i, const SpectralPoint& sp);
Complex eval_s_prime(const KernelRep& rep, int i, const SpectralPoint& sp);
Complex eval_c(const KernelRep& rep, int i, const SpectralPoint& sp);
Complex eval_c_prime(const KernelRep& rep, int i, const SpectralPoint& sp);

// S through the plain sine-kernel form (no partial integration); agrees with
// eval_s to O(step^2) and serves as its cross-check.
Complex eval_s_sin_form(const KernelRep& rep, int i, const SpectralPoint& sp);

// Both sides of the identity C(x) = 1 - lambda int_0^x S, evaluated as two
// independent exact integrations of the same bilinear interpolant of P
// against sin(rho(s-t)): lhs groups phases by lag (the C representation),
// rhs by absolute node angle (the integrated-S representation). Their
// difference is pure rounding; either side is an O(step^2) value.
struct IdentityCheck {
  std::vector<Complex> lhs, rhs;
  double max_diff;
};
IdentityCheck c_identity_check(const TriangularKernel& P, const SpectralPoint& sp);

}  // namespace convspec
