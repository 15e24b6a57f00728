#include "convspec/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "convspec/oscint.hpp"

namespace convspec {

Complex product_char_fn(const Spectrum& s, const SpectralPoint& sp) {
  const int K = s.K();
  if (K < 0) throw InputError("product_char_fn: empty spectrum");
  const Complex lam = sp.lambda, rho = sp.rho;
  const int j = std::clamp(static_cast<int>(std::llround(rho.real())), 0, K);

  Complex base;
  if (j == 0) {
    base = -kPi * oscint::sinc(rho * kPi) * (lam - s[0]);
  } else {
    // sinc(pi rho)/(j^2 - lambda) rewritten about rho = j; u stays small on
    // the disc that selects this branch, so nothing cancels
    const Complex u = rho - double(j);
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    base = sgn * kPi * oscint::sinc(u * kPi) * (lam - s[0]) * (s[j] - lam) /
           (rho * (rho + double(j)));
  }
  for (int k = 1; k <= K; ++k) {
    if (k == j) continue;
    base *= (s[k] - lam) / (double(k) * double(k) - lam);
  }
  return base;
}

Complex alpha_from_spectrum(const Spectrum& s) {
  if (s.K() < 0) throw InputError("alpha_from_spectrum: empty spectrum");
  Complex a = kPi * s[0];
  for (int k = 1; k <= s.K(); ++k) a *= s[k] / (double(k) * double(k));
  return a;
}

std::vector<Complex> beta_from_spectrum(const Spectrum& s) {
  std::vector<Complex> beta(static_cast<size_t>(s.K()) + 1);
  beta[0] = alpha_from_spectrum(s);
  for (int k = 1; k <= s.K(); ++k)
    beta[static_cast<size_t>(k)] =
        product_char_fn(s, SpectralPoint(Complex(double(k) * double(k), 0.0)));
  return beta;
}

namespace {

SampledFunction synthesize(const Spectrum& s, Grid g, bool resummed) {
  const std::vector<Complex> beta = beta_from_spectrum(s);
  const Complex alpha = beta[0];
  SampledFunction w(g);
  for (int i = 0; i <= g.n; ++i) {
    const double x = g.x(i);
    Complex acc(0.0, 0.0);
    for (int k = 1; k <= s.K(); ++k) {
      const Complex coef = resummed ? beta[static_cast<size_t>(k)]
                                    : beta[static_cast<size_t>(k)] - alpha;
      acc += coef / double(k) * std::sin(double(k) * x);
    }
    w.v[static_cast<size_t>(i)] = (2.0 / kPi) * acc;
    if (resummed) w.v[static_cast<size_t>(i)] -= alpha * (kPi - x) / kPi;
  }
  return w;
}

}  // namespace

SampledFunction w_from_spectrum(const Spectrum& s, Grid g) {
  return synthesize(s, g, true);
}

SampledFunction w_from_theta(const Spectrum& s, Grid g) {
  return synthesize(s, g, false);
}

CharFnModel char_fn_model_from_spectrum(const Spectrum& s, Grid g) {
  return CharFnModel{alpha_from_spectrum(s), w_from_spectrum(s, g)};
}

}  // namespace convspec
