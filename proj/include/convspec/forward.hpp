#pragma once

#include <functional>
#include <string>
#include <vector>

#include "convspec/grid.hpp"
#include "convspec/volterra.hpp"

// Forward spectral problem: from the convolution coefficient M and the
// boundary coefficients (h, H) to the characteristic function and its roots.

namespace convspec {

// March of y'' = -lambda y + (M * y')(x) with y(0) = y0, y'(0) = v0.
// One step advances the homogeneous part by the exact rotation and the
// memory term by Duhamel against a local parabola in the forcing; the new
// forcing value closes a single linear scalar equation per step.
struct IvpSolution {
  SampledFunction y, v;

  Complex y_end() const { return y[y.n()]; }
  Complex v_end() const { return v[v.n()]; }
};
IvpSolution solve_ivp(const SampledFunction& M, const SpectralPoint& sp,
                      Complex y0, Complex v0);

// Characteristic function by one initial-value march: phi = C + h S,
// Delta = phi'(pi) + H phi(pi).
Complex char_fn_direct(const SampledFunction& M, const SpectralPoint& sp,
                       const BoundaryCoefficients& bc);

// Same value assembled from separate C and S marches; cross-check only.
Complex char_fn_direct_cs(const SampledFunction& M, const SpectralPoint& sp,
                          const BoundaryCoefficients& bc);

// Delta(lambda) = -rho sin(rho pi) + alpha + rho int_0^pi w(x) sin(rho x) dx.
// Everything the characteristic function knows is in (alpha, w); evaluating
// the model at one lambda costs one pass of oscillatory quadrature.
struct CharFnModel {
  Complex alpha;
  SampledFunction w;
};

CharFnModel char_fn_model_from_kernel(const SampledFunction& N,
                                      const BoundaryCoefficients& bc,
                                      int nu_max = 0);
Complex char_fn_from_model(const CharFnModel& model, const SpectralPoint& sp);

using CharFn = std::function<Complex(const SpectralPoint&)>;

// Roots of a characteristic function, indexed so that rho_k -> k. The search
// runs a deterministic sequence: one Newton launch per index, dedup, disc
// assignment, then fixed probe ladders for indices still open, and finally
// surplus roots in ascending order. Failure to fill every index throws.
struct SpectrumResult {
  Spectrum spectrum;
  std::vector<std::string> warnings;
  long evals = 0;
};

// tol is the Newton step criterion on the iterated variable (relative).
SpectrumResult find_spectrum(const CharFn& f, int count, double tol = 1e-12);
SpectrumResult find_spectrum_of_model(const CharFnModel& model, int count,
                                      double tol = 1e-12);

}  // namespace convspec
