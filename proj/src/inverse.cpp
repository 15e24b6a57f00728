#include "convspec/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convspec/kernels.hpp"
#include "convspec/volterra.hpp"

namespace convspec {

SampledFunction main_series_rhs(const SampledFunction& N,
                                const BoundaryCoefficients& bc, int nu_max) {
  const PiSlices sl = kernels_at_pi(N, nu_max);
  SampledFunction F(N.grid);
  for (int i = 0; i <= N.grid.n; ++i) {
    const size_t is = static_cast<size_t>(i);
    F.v[is] = sl.P[i] + bc.h * (sl.R[i] - 1.0) + bc.H * (sl.Q[i] - 1.0) +
              bc.h * bc.H * (sl.K[i] - N.grid.x(i));
  }
  return F;
}

namespace {

struct MarchResult {
  SampledFunction N;
  double last_power_max;
};

MarchResult march(const SampledFunction& f, Complex h, Complex H, int numax) {
  const Grid g = f.grid;
  const int n = g.n;
  const double dx = g.step;

  MarchResult out{SampledFunction(g), 0.0};
  std::vector<Complex>& N = out.N.v;

  // powers[nu] is N^{*nu}, nu >= 2; power one lives in N itself
  std::vector<std::vector<Complex>> powers(static_cast<size_t>(numax) + 1);
  for (int nu = 2; nu <= numax; ++nu)
    powers[static_cast<size_t>(nu)].assign(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
  auto pw = [&](int nu) -> Complex* {
    return nu == 1 ? N.data() : powers[static_cast<size_t>(nu)].data();
  };

  const size_t nn = static_cast<size_t>(numax) + 1;
  // running integrals through the previous node and the integrand values
  // there, one slot per power: plain, (pi-t)-weighted, and t-moment variants
  std::vector<Complex> cumA(nn), cumBm(nn), cumTm(nn), cumT(nn), cumD(nn);
  std::vector<Complex> pA(nn), pBm(nn), pTm(nn), pT(nn), pD(nn);
  std::vector<double> wfull(nn), wprev(nn);
  auto weights_at = [&](double x) {
    const double px = kPi - x;
    wprev[1] = 1.0;
    wfull[1] = px;
    for (int nu = 2; nu <= numax; ++nu) {
      wprev[static_cast<size_t>(nu)] = wfull[static_cast<size_t>(nu) - 1];
      wfull[static_cast<size_t>(nu)] = wfull[static_cast<size_t>(nu) - 1] * px / nu;
    }
  };
  auto powers_at = [&](int i) {
    for (int nu = 2; nu <= numax; ++nu)
      pw(nu)[i] = dx * (kernels::cdot_rev(N.data(), pw(nu - 1), i + 1) -
                        0.5 * (N[static_cast<size_t>(i)] * pw(nu - 1)[0] +
                               N[0] * pw(nu - 1)[i]));
  };

  // node 0: every integral vanishes and only the first power survives
  N[0] = f[0] / kPi;
  weights_at(0.0);
  for (int nu = 1; nu <= numax; ++nu) {
    const size_t s = static_cast<size_t>(nu);
    const Complex p0 = pw(nu)[0];
    pA[s] = wfull[s] * p0;
    pBm[s] = wprev[s] * p0;
    pTm[s] = Complex(0.0, 0.0);
    pT[s] = Complex(0.0, 0.0);
    pD[s] = p0;
  }

  for (int i = 1; i <= n; ++i) {
    const double x = g.x(i);
    weights_at(x);
    const size_t is = static_cast<size_t>(i);

    if (i == n) {
      // no diagonal left at x = pi; close with quadratic extrapolation
      N[is] = n >= 3 ? 3.0 * N[is - 1] - 3.0 * N[is - 2] + N[is - 3]
                     : 2.0 * N[is - 1] - N[is - 2];
    } else {
      Complex ni = i >= 2 ? 2.0 * N[is - 1] - N[is - 2] : N[is - 1];
      const double diag = kPi - x;
      bool done = false;
      for (int it = 0; it < 40; ++it) {
        N[is] = ni;
        powers_at(i);
        Complex F(0.0, 0.0);
        double fmag = 0.0;
        for (int nu = 1; nu <= numax; ++nu) {
          const size_t s = static_cast<size_t>(nu);
          const Complex pnu = pw(nu)[i];
          const Complex aI = cumA[s] + 0.5 * dx * (pA[s] + wfull[s] * pnu);
          const Complex bmI = cumBm[s] + 0.5 * dx * (pBm[s] + wprev[s] * pnu);
          const Complex tmI = cumTm[s] + 0.5 * dx * (pTm[s] + x * wprev[s] * pnu);
          const Complex tI = cumT[s] + 0.5 * dx * (pT[s] + x * wfull[s] * pnu);
          const Complex dI = cumD[s] + 0.5 * dx * (pD[s] + pnu);
          const Complex layer = wfull[s] * pnu + H * wfull[s] * dI +
                                h * (aI + x * bmI - tmI + H * (x * aI - tI));
          F += layer;
          fmag += std::abs(layer);
        }
        const Complex delta = (f[i] - F) / diag;
        ni += delta;
        // dividing by the shrinking diagonal amplifies the rounding noise of
        // F; near x = pi that floor sits above any fixed relative tolerance
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                             (1.0 + fmag + std::abs(f[i])) / diag;
        if (std::abs(delta) <= 1e-13 * (1.0 + std::abs(ni)) + noise) {
          done = true;
          break;
        }
      }
      if (!done)
        throw ConvergenceError("solve_main_series: node iteration stalled at x=" +
                               std::to_string(x));
      N[is] = ni;
    }

    // commit: refresh powers with the settled value, roll the integrals
    powers_at(i);
    for (int nu = 1; nu <= numax; ++nu) {
      const size_t s = static_cast<size_t>(nu);
      const Complex pnu = pw(nu)[i];
      const Complex gA = wfull[s] * pnu, gBm = wprev[s] * pnu;
      const Complex gTm = x * gBm, gT = x * gA, gD = pnu;
      cumA[s] += 0.5 * dx * (pA[s] + gA);
      cumBm[s] += 0.5 * dx * (pBm[s] + gBm);
      cumTm[s] += 0.5 * dx * (pTm[s] + gTm);
      cumT[s] += 0.5 * dx * (pT[s] + gT);
      cumD[s] += 0.5 * dx * (pD[s] + gD);
      pA[s] = gA;
      pBm[s] = gBm;
      pTm[s] = gTm;
      pT[s] = gT;
      pD[s] = gD;
    }
  }

  for (int i = 0; i <= n; ++i)
    out.last_power_max = std::max(out.last_power_max, std::abs(pw(numax)[i]));
  return out;
}

}  // namespace

SampledFunction solve_main_series(const SampledFunction& f,
                                  const BoundaryCoefficients& bc, int nu_max) {
  require_finite(f, "solve_main_series");
  if (nu_max >= 1) return march(f, bc.h, bc.H, nu_max).N;

  const double fscale = std::max(1.0, max_abs(f));
  for (int numax : {16, 24, 32, 48, 64}) {
    MarchResult r = march(f, bc.h, bc.H, numax);
    const double tail =
        std::exp(numax * std::log(kPi) - std::lgamma(numax + 1.0)) * r.last_power_max;
    if (tail <= 1e-12 * fscale) return std::move(r.N);
  }
  throw ConvergenceError("solve_main_series: series depth exhausted; data too rough");
}

SampledFunction endpoint_data(const SampledFunction& w, const BoundaryCoefficients& bc) {
  const int n = w.grid.n;
  SampledFunction f(w.grid);
  for (int i = 0; i <= n; ++i)
    f.v[static_cast<size_t>(i)] =
        -w[n - i] - bc.h - bc.H - bc.h * bc.H * w.grid.x(i);
  return f;
}

namespace {

InverseSolution assemble(const Spectrum& s, const BoundaryCoefficients& bc, Grid g,
                         int nu_max, Complex alpha) {
  const SampledFunction w = w_from_spectrum(s, g);
  const SampledFunction f = endpoint_data(w, bc);
  InverseSolution out{SampledFunction(g), solve_main_series(f, bc, nu_max), w, alpha, bc};
  out.M = n_to_m(out.N);
  return out;
}

}  // namespace

InverseSolution inverse_known_bc(const Spectrum& s, const BoundaryCoefficients& bc,
                                 Grid g, int nu_max) {
  return assemble(s, bc, g, nu_max, alpha_from_spectrum(s));
}

InverseSolution inverse_spectrum_only(const Spectrum& s, Grid g, int nu_max) {
  const Complex alpha = alpha_from_spectrum(s);
  return assemble(s, BoundaryCoefficients{Complex(0.0, 0.0), alpha}, g, nu_max, alpha);
}

}  // namespace convspec
