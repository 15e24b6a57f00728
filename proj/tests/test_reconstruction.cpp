#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convspec/forward.hpp"
#include "convspec/reconstruction.hpp"
#include "convspec/volterra.hpp"

using convspec::CharFnModel;
using convspec::Complex;
using convspec::Grid;
using convspec::SampledFunction;
using convspec::SpectralPoint;
using convspec::Spectrum;
using convspec::kPi;

namespace {

Spectrum squares(int K) {
  Spectrum s;
  for (int k = 0; k <= K; ++k) s.values.push_back(Complex(double(k) * k, 0.0));
  return s;
}

}  // namespace

TEST_CASE("product over the square spectrum collapses to -rho sin(rho pi)") {
  const Spectrum s = squares(40);
  for (const Complex lam : {Complex(0.5, 0.0), Complex(2.5, 0.0), Complex(9.3, 0.0),
                            Complex(-6.0, 0.0), Complex(3.0, 2.0), Complex(401.7, 0.0)}) {
    const SpectralPoint sp(lam);
    const Complex want = -sp.rho * std::sin(sp.rho * kPi);
    const Complex got = convspec::product_char_fn(s, sp);
    CHECK(std::abs(got - want) < 1e-10 * (1.0 + std::abs(want)));
  }
  // eigenvalues are exact zeros, including ones past the stored range
  CHECK(std::abs(convspec::product_char_fn(s, SpectralPoint(Complex(16.0, 0.0)))) == 0.0);
  CHECK(std::abs(convspec::product_char_fn(s, SpectralPoint(Complex(49.0 * 49.0, 0.0)))) <
        1e-9);
}

TEST_CASE("alpha of the square spectrum is zero") {
  CHECK(convspec::alpha_from_spectrum(squares(30)) == Complex(0.0, 0.0));
}

TEST_CASE("alpha converges to the boundary constant as the spectrum grows") {
  // zero kernel with h = 0, H = 1: alpha = 1; the product picks it up at O(1/K)
  Grid g(64);
  const CharFnModel model =
      convspec::char_fn_model_from_kernel(convspec::m_to_n(SampledFunction(g)), {0.0, 1.0});
  const convspec::SpectrumResult r50 = convspec::find_spectrum_of_model(model, 51);
  const convspec::SpectrumResult r200 = convspec::find_spectrum_of_model(model, 201);
  const double e50 = std::abs(convspec::alpha_from_spectrum(r50.spectrum) - 1.0);
  const double e200 = std::abs(convspec::alpha_from_spectrum(r200.spectrum) - 1.0);
  CHECK(e200 < e50);
  CHECK(e200 < 5e-3);
}

TEST_CASE("sampled characteristic values track the model") {
  Grid g(64);
  const CharFnModel model =
      convspec::char_fn_model_from_kernel(convspec::m_to_n(SampledFunction(g)), {0.0, 1.0});
  const convspec::SpectrumResult res = convspec::find_spectrum_of_model(model, 201);
  const auto beta = convspec::beta_from_spectrum(res.spectrum);
  REQUIRE(int(beta.size()) == 201);
  // beta[0] doubles as alpha
  CHECK(beta[0] == convspec::alpha_from_spectrum(res.spectrum));
  for (int k = 1; k <= 10; ++k) {
    const Complex want = convspec::char_fn_from_model(model, SpectralPoint(Complex(k * k, 0.0)));
    CHECK(std::abs(beta[size_t(k)] - want) < 2e-2 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("the two series forms of w coincide when alpha vanishes") {
  Spectrum s = squares(25);
  s.values[1] = Complex(1.1, 0.0);
  s.values[3] = Complex(8.9, 0.0);
  REQUIRE(convspec::alpha_from_spectrum(s) == Complex(0.0, 0.0));
  Grid g(128);
  const SampledFunction a = convspec::w_from_spectrum(s, g);
  const SampledFunction b = convspec::w_from_theta(s, g);
  double worst = 0.0;
  for (int i = 0; i <= g.n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("w of a zero-kernel problem is linear and improves with more eigenvalues") {
  // exact endpoint function: w(x) = -(h + H) - h H (pi - x)
  Grid g(256);
  auto err_at = [&](Complex h, Complex H, int K) {
    const CharFnModel model =
        convspec::char_fn_model_from_kernel(convspec::m_to_n(SampledFunction(g)), {h, H});
    const convspec::SpectrumResult res = convspec::find_spectrum_of_model(model, K + 1);
    const SampledFunction w = convspec::w_from_spectrum(res.spectrum, g);
    double worst = 0.0;
    const int upto = (9 * g.n) / 10;
    for (int i = 0; i <= upto; ++i) {
      const Complex want = -(h + H) - h * H * (kPi - g.x(i));
      worst = std::max(worst, std::abs(w[i] - want));
    }
    return worst;
  };
  // h + H = 0 leaves only the resummed linear term, exact at any truncation
  CHECK(err_at(0.4, -0.4, 25) < 1e-10);
  CHECK(err_at(0.4, -0.4, 100) < 1e-10);
  // h + H != 0 has genuine 1/k sine content, so truncation must decay
  const double e25 = err_at(0.5, 0.3, 25), e100 = err_at(0.5, 0.3, 100);
  CHECK(e100 < e25);
  CHECK(e100 < 0.05);
}

TEST_CASE("model assembled from a spectrum carries matching alpha and grid") {
  const Spectrum s = squares(20);
  Grid g(96);
  const CharFnModel m = convspec::char_fn_model_from_spectrum(s, g);
  CHECK(m.alpha == convspec::alpha_from_spectrum(s));
  CHECK(m.w.grid == g);
  // square spectrum means the free problem: w is identically zero
  CHECK(convspec::max_abs(m.w) < 1e-12);
}
