#pragma once

#include "convspec/forward.hpp"
#include "convspec/reconstruction.hpp"

// Inverse spectral problem: from eigenvalue data to the convolution
// coefficient M. The pivot is the series equation tying the generator N to
// the endpoint data f(x) = -w(pi - x) - h - H - h H x: solve it for N node
// by node, then algebra maps N to M.

namespace convspec {

// Left side of the series equation applied to a known generator; assembled
// from the x = pi kernel slices, so it is an independent restatement of what
// the marching solver enforces.
SampledFunction main_series_rhs(const SampledFunction& N,
                                const BoundaryCoefficients& bc, int nu_max = 0);

// March for N. Each node equation has dominant diagonal (pi - x) N(x); the
// remaining self-coupling enters through one quadrature step and contracts
// like the step size, so a short fixed-point loop per node settles it. The
// final node carries no equation at all in this discretization and is filled
// by quadratic extrapolation. nu_max <= 0 grows the series depth until the
// dropped tail is below rounding.
SampledFunction solve_main_series(const SampledFunction& f,
                                  const BoundaryCoefficients& bc, int nu_max = 0);

// f(x_i) = -w(pi - x_i) - h - H - h H x_i, the data the march consumes.
SampledFunction endpoint_data(const SampledFunction& w, const BoundaryCoefficients& bc);

struct InverseSolution {
  SampledFunction M, N, w;
  Complex alpha;
  BoundaryCoefficients bc;  // as given, or as recovered from alpha
};

// Spectrum plus both boundary coefficients.
InverseSolution inverse_known_bc(const Spectrum& s, const BoundaryCoefficients& bc,
                                 Grid g, int nu_max = 0);

// Spectrum alone, for the h = 0 boundary family: alpha then equals H, which
// recovers the right-end coefficient before the march.
InverseSolution inverse_spectrum_only(const Spectrum& s, Grid g, int nu_max = 0);

}  // namespace convspec
