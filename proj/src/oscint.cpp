#include "convspec/oscint.hpp"

namespace convspec::oscint {
namespace {

constexpr double kSeriesRadius = 0.5;

// sum_m (-1)^m z^{2m} * c_m with c_m supplied by the caller through the
// recurrence factor; shared skeleton for the even entire functions.
template <typename NextCoeff>
Complex even_series(Complex z2, Complex first, NextCoeff next) {
  Complex term = first;
  Complex acc = term;
  for (int m = 1; m < 30; ++m) {
    term *= -z2;
    term *= next(m);
    acc += term;
    if (std::abs(term) <= 1e-18 * (1.0 + std::abs(acc))) break;
  }
  return acc;
}

}  // namespace

Complex sinc(Complex z) {
  if (std::abs(z) > kSeriesRadius) return std::sin(z) / z;
  // 1/(2m)! -> 1/(2m+1)! ratio: 1/((2m)(2m+1))
  return even_series(z * z, Complex(1.0, 0.0),
                     [](int m) { return 1.0 / double(2 * m * (2 * m + 1)); });
}

Complex cosm1_over_z2(Complex z) {
  if (std::abs(z) > kSeriesRadius) return (1.0 - std::cos(z)) / (z * z);
  return even_series(z * z, Complex(0.5, 0.0),
                     [](int m) { return 1.0 / double((2 * m + 1) * (2 * m + 2)); });
}

Complex zmsin_over_z3(Complex z) {
  if (std::abs(z) > kSeriesRadius) return (z - std::sin(z)) / (z * z * z);
  return even_series(z * z, Complex(1.0 / 6.0, 0.0),
                     [](int m) { return 1.0 / double((2 * m + 2) * (2 * m + 3)); });
}

Complex z2cos_over_z4(Complex z) {
  if (std::abs(z) > kSeriesRadius) {
    Complex z2 = z * z;
    return (z2 + 2.0 * std::cos(z) - 2.0) / (z2 * z2);
  }
  return even_series(z * z, Complex(1.0 / 12.0, 0.0),
                     [](int m) { return 1.0 / double((2 * m + 3) * (2 * m + 4)); });
}

HatMoments hat_moments(Complex rho, double h) {
  const Complex z = rho * h;
  Complex mc0, mc1, ms0, ms1;  // int s^p cos/sin(rho s) over [0, h]
  if (std::abs(z) > kSeriesRadius) {
    const Complex sz = std::sin(z), cz = std::cos(z), z2 = z * z;
    mc0 = h * sz / z;
    ms0 = h * (1.0 - cz) / z;
    mc1 = h * h * (cz + z * sz - 1.0) / z2;
    ms1 = h * h * (sz - z * cz) / z2;
  } else {
    // mc_p = h^{p+1} sum (-1)^m z^{2m} / ((2m)! (2m+p+1))
    // ms_p = h^{p+1} sum (-1)^m z^{2m+1} / ((2m+1)! (2m+p+2))
    const Complex z2 = z * z;
    auto mc = [&](int p) {
      Complex term = Complex(1.0 / (p + 1), 0.0);
      Complex acc = term;
      for (int m = 1; m < 30; ++m) {
        term *= -z2;
        term *= double(2 * m + p - 1) / double(2 * m * (2 * m - 1) * (2 * m + p + 1));
        acc += term;
        if (std::abs(term) <= 1e-18 * (1.0 + std::abs(acc))) break;
      }
      return acc;
    };
    auto ms = [&](int p) {
      Complex term = z / double(p + 2);
      Complex acc = term;
      for (int m = 1; m < 30; ++m) {
        term *= -z2;
        term *= double(2 * m + p) / double(2 * m * (2 * m + 1) * (2 * m + p + 2));
        acc += term;
        if (std::abs(term) <= 1e-18 * (1.0 + std::abs(acc))) break;
      }
      return acc;
    };
    mc0 = h * mc(0);
    mc1 = h * h * mc(1);
    ms0 = h * ms(0);
    ms1 = h * h * ms(1);
  }
  return {mc0 - mc1 / h, mc1 / h, ms0 - ms1 / h, ms1 / h};
}

Complex filon_sin(const Complex* g, int m, double h, Complex rho) {
  if (m <= 0) return Complex(0.0, 0.0);
  const HatMoments mom = hat_moments(rho, h);
  const Complex ch = std::cos(rho * h), sh = std::sin(rho * h);
  Complex c = 1.0, s = 0.0;  // cos/sin of rho * u_j
  Complex acc = 0.0;
  for (int j = 0; j < m; ++j) {
    if ((j & 31) == 0 && j > 0) {
      const Complex ph = rho * (h * j);
      c = std::cos(ph);
      s = std::sin(ph);
    }
    acc += s * (g[j] * mom.c0 + g[j + 1] * mom.c1) + c * (g[j] * mom.s0 + g[j + 1] * mom.s1);
    const Complex cn = c * ch - s * sh;
    s = s * ch + c * sh;
    c = cn;
  }
  return acc;
}

}  // namespace convspec::oscint
