#pragma once

#include <vector>

#include "convspec/forward.hpp"
#include "convspec/grid.hpp"

// From a finite spectrum back to the characteristic function model (alpha, w).
// Eigenvalues beyond the stored range are the classical squares, which makes
// every product below a finite computation.

namespace convspec {

// Infinite-product characteristic function. The factor whose disc contains
// rho is folded into the closed tail so that nothing vanishes against a zero
// denominator near lambda = k^2; the result is exact algebra at every lambda.
Complex product_char_fn(const Spectrum& s, const SpectralPoint& sp);

// alpha = Delta(0) = pi lambda_0 prod_k lambda_k / k^2.
Complex alpha_from_spectrum(const Spectrum& s);

// out[0] = Delta(0) = alpha; out[k] = Delta(k^2) for 1 <= k <= K. These are
// the sine-moment values of w: Delta(k^2) = alpha + k int_0^pi w sin(kx).
std::vector<Complex> beta_from_spectrum(const Spectrum& s);

// Sine synthesis of w with the alpha part resummed in closed form, which
// pins w(0) = -alpha exactly and removes the slowly decaying common tail.
SampledFunction w_from_spectrum(const Spectrum& s, Grid g);

// Plain centered sine synthesis (coefficients (beta_k - alpha)/k); kept as a
// cross-check, identical to the above when alpha = 0.
SampledFunction w_from_theta(const Spectrum& s, Grid g);

CharFnModel char_fn_model_from_spectrum(const Spectrum& s, Grid g);

}  // namespace convspec
