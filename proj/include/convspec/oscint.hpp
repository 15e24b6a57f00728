#pragma once

#include "convspec/grid.hpp"

// Oscillatory helpers: entire even functions used by the time stepper, and
// moment-exact quadrature of piecewise-linear data against sin(rho u).
// Everything here is well defined at rho = 0 (series branch below |z| = 1/2).

namespace convspec::oscint {

Complex sinc(Complex z);            // sin z / z                 -> 1
Complex cosm1_over_z2(Complex z);   // (1 - cos z) / z^2         -> 1/2
Complex zmsin_over_z3(Complex z);   // (z - sin z) / z^3         -> 1/6
Complex z2cos_over_z4(Complex z);   // (z^2 + 2 cos z - 2) / z^4 -> 1/12

// Integrals over one step against the hat basis u0 = 1 - s/h, u1 = s/h:
//   cq = int_0^h uq(s) cos(rho s) ds,   sq = int_0^h uq(s) sin(rho s) ds.
struct HatMoments {
  Complex c0, c1, s0, s1;
};
HatMoments hat_moments(Complex rho, double h);

// int_0^{m h} g(u) sin(rho u) du, exact for the piecewise-linear interpolant
// of g[0..m]. Node phases advance by rotation, re-anchored periodically.
Complex filon_sin(const Complex* g, int m, double h, Complex rho);

}  // namespace convspec::oscint
