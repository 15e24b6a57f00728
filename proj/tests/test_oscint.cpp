#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "convspec/oscint.hpp"

using convspec::Complex;
namespace o = convspec::oscint;

namespace {

// brute-force Richardson-refined Simpson oracle for int_0^h g(u) sin(rho u) du
Complex simpson_sin(double a, double b, Complex rho, const auto& g, int panels) {
  const double h = (b - a) / panels;
  Complex acc = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double u0 = a + j * h, u2 = u0 + h, u1 = 0.5 * (u0 + u2);
    auto f = [&](double u) { return g(u) * std::sin(rho * u); };
    acc += (h / 6.0) * (f(u0) + 4.0 * f(u1) + f(u2));
  }
  return acc;
}

}  // namespace

TEST_CASE("removable-singularity helpers agree with direct evaluation away from 0") {
  for (const Complex z : {Complex(1.3, 0.0), Complex(0.7, 0.4), Complex(-2.0, 1.0)}) {
    CHECK(std::abs(o::sinc(z) - std::sin(z) / z) < 1e-15);
    CHECK(std::abs(o::cosm1_over_z2(z) - (1.0 - std::cos(z)) / (z * z)) < 1e-14);
    CHECK(std::abs(o::zmsin_over_z3(z) - (z - std::sin(z)) / (z * z * z)) < 1e-13);
    CHECK(std::abs(o::z2cos_over_z4(z) - (z * z + 2.0 * std::cos(z) - 2.0) / (z * z * z * z)) <
          1e-12);
  }
}

TEST_CASE("removable-singularity helpers are continuous across the series branch") {
  // straddle the |z| = 0.5 switch; both sides must agree to rounding
  for (double r : {0.4999999, 0.5000001}) {
    const Complex z(r, 0.0);
    CHECK(std::abs(o::sinc(z) - std::sin(r) / r) < 1e-15);
    CHECK(std::abs(o::cosm1_over_z2(z) - (1.0 - std::cos(r)) / (r * r)) < 1e-15);
    CHECK(std::abs(o::zmsin_over_z3(z) - (r - std::sin(r)) / (r * r * r)) < 1e-15);
    CHECK(std::abs(o::z2cos_over_z4(z) - (r * r + 2.0 * std::cos(r) - 2.0) / (r * r * r * r)) <
          1e-14);
  }
  CHECK(o::sinc(Complex(0.0, 0.0)) == Complex(1.0, 0.0));
  CHECK(o::cosm1_over_z2(Complex(0.0, 0.0)) == Complex(0.5, 0.0));
  CHECK(o::zmsin_over_z3(Complex(0.0, 0.0)).real() == doctest::Approx(1.0 / 6.0));
  CHECK(o::z2cos_over_z4(Complex(0.0, 0.0)).real() == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("hat moments match a numeric oracle") {
  const double h = 0.05;
  for (const Complex rho : {Complex(3.0, 0.0), Complex(40.0, 0.0), Complex(2.0, 1.5),
                            Complex(0.0, 0.0), Complex(1e-5, 0.0)}) {
    const o::HatMoments m = o::hat_moments(rho, h);
    // s0: weight (1 - u/h) on [0, h] against sin(rho u); s1: weight u/h
    const Complex s0 =
        simpson_sin(0.0, h, rho, [&](double u) { return 1.0 - u / h; }, 64);
    const Complex s1 = simpson_sin(0.0, h, rho, [&](double u) { return u / h; }, 64);
    auto cosine = [&](double a, double b, const auto& g) {
      const double hh = (b - a) / 64;
      Complex acc = 0.0;
      for (int j = 0; j < 64; ++j) {
        const double u0 = a + j * hh, u2 = u0 + hh, u1 = 0.5 * (u0 + u2);
        auto f = [&](double u) { return g(u) * std::cos(rho * u); };
        acc += (hh / 6.0) * (f(u0) + 4.0 * f(u1) + f(u2));
      }
      return acc;
    };
    const Complex c0 = cosine(0.0, h, [&](double u) { return 1.0 - u / h; });
    const Complex c1 = cosine(0.0, h, [&](double u) { return u / h; });
    CHECK(std::abs(m.c0 - c0) < 1e-10);
    CHECK(std::abs(m.c1 - c1) < 1e-10);
    CHECK(std::abs(m.s0 - s0) < 1e-10);
    CHECK(std::abs(m.s1 - s1) < 1e-10);
  }
}

TEST_CASE("filon_sin is exact for piecewise-linear integrands") {
  const double h = 0.01;
  const int m = 300;
  std::vector<Complex> g(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double u = j * h;
    g[j] = Complex(2.0 * u - 0.3, -0.5 * u);  // linear, so the hat interpolant is g itself
  }
  for (const Complex rho : {Complex(7.0, 0.0), Complex(55.5, 0.0), Complex(3.0, 2.0)}) {
    const Complex got = o::filon_sin(g.data(), m, h, rho);
    // closed form: int (a u + b) sin(rho u) du over [0, L]
    const Complex a(2.0, -0.5), b(-0.3, 0.0);
    const double L = m * h;
    const Complex sr = std::sin(rho * L), cr = std::cos(rho * L);
    const Complex want = a * (sr / (rho * rho) - L * cr / rho) + b * (1.0 - cr) / rho;
    CHECK(std::abs(got - want) < 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("filon_sin handles rho = 0 and tiny rho") {
  const double h = 0.02;
  const int m = 100;
  std::vector<Complex> g(m + 1);
  for (int j = 0; j <= m; ++j) g[j] = Complex(1.0, 0.0);
  // integrand -> g * sin(0 * u) = 0
  CHECK(std::abs(o::filon_sin(g.data(), m, h, Complex(0.0, 0.0))) == 0.0);
  const Complex tiny(1e-9, 0.0);
  const double L = m * h;
  // int sin(rho u) du = rho L^2 / 2 + O(rho^3)
  CHECK(std::abs(o::filon_sin(g.data(), m, h, tiny) - tiny * L * L * 0.5) < 1e-18);
}

TEST_CASE("filon_sin converges at second order on a smooth integrand") {
  const Complex rho(25.0, 0.0);
  auto run = [&](int m) {
    const double h = 1.0 / m;
    std::vector<Complex> g(m + 1);
    for (int j = 0; j <= m; ++j) g[j] = std::exp(-j * h) * std::cos(3.0 * j * h);
    return o::filon_sin(g.data(), m, h, rho);
  };
  const Complex ref = run(4096);
  const double e1 = std::abs(run(64) - ref);
  const double e2 = std::abs(run(128) - ref);
  // hat interpolation is O(h^2); the rotation recurrence must not degrade it
  CHECK(e2 < e1 / 3.2);
  CHECK(e2 < 1e-5);
}

TEST_CASE("filon_sin with nonpositive length is zero") {
  std::vector<Complex> g(4, Complex(1.0, 0.0));
  CHECK(o::filon_sin(g.data(), 0, 0.1, Complex(2.0, 0.0)) == Complex(0.0, 0.0));
  CHECK(o::filon_sin(g.data(), -3, 0.1, Complex(2.0, 0.0)) == Complex(0.0, 0.0));
}
