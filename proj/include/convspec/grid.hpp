#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace convspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Bad or inconsistent input data (files, manifests, malformed samples).
struct InputError : std::runtime_error {
  int row = -1;
  explicit InputError(const std::string& msg, int row_ = -1)
      : std::runtime_error(msg), row(row_) {}
};

// An iteration failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform grid x_i = i*step on [0, pi], step = pi/n.
struct Grid {
  int n;
  double step;

  explicit Grid(int n_) : n(n_), step(kPi / n_) {
    if (n_ < 2) throw InputError("grid: need at least 2 intervals, got " + std::to_string(n_));
  }
  double x(int i) const { return step * i; }
  int size() const { return n + 1; }
  bool operator==(const Grid& o) const { return n == o.n; }
  bool operator!=(const Grid& o) const { return n != o.n; }
};

// Complex-valued function sampled at the grid nodes.
struct SampledFunction {
  Grid grid;
  std::vector<Complex> v;

  explicit SampledFunction(Grid g, Complex fill = Complex(0.0, 0.0))
      : grid(g), v(static_cast<size_t>(g.size()), fill) {}

  Complex& operator[](int i) { return v[static_cast<size_t>(i)]; }
  const Complex& operator[](int i) const { return v[static_cast<size_t>(i)]; }
  int n() const { return grid.n; }
  const Complex* data() const { return v.data(); }
  Complex* data() { return v.data(); }
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(const SampledFunction& f, const char* what) {
  for (int i = 0; i <= f.n(); ++i)
    if (!is_finite(f[i]))
      throw InputError(std::string(what) + ": non-finite value at node " + std::to_string(i), i);
}

inline void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* what) {
  if (a.grid != b.grid)
    throw InputError(std::string(what) + ": grid mismatch (" + std::to_string(a.n()) + " vs " +
                     std::to_string(b.n()) + ")");
}

// Spectral parameter. rho is the square root of lambda on the branch
// Re rho >= 0, with Im rho >= 0 when Re rho = 0; all spectral formulas
// are even in rho, so the branch only fixes a labeling.
struct SpectralPoint {
  Complex lambda;
  Complex rho;

  static Complex branch_sqrt(Complex lam) {
    Complex r = std::sqrt(lam);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    return r;
  }
  explicit SpectralPoint(Complex lam) : lambda(lam), rho(branch_sqrt(lam)) {}
};

// Eigenvalues indexed densely from k = 0. Beyond the stored range the tail
// is taken as lambda_k = k^2 (exact classical values), which is what every
// truncated product below assumes.
struct Spectrum {
  std::vector<Complex> values;
  bool tail_is_squares = true;

  int K() const { return static_cast<int>(values.size()) - 1; }
  Complex operator[](int k) const { return values[static_cast<size_t>(k)]; }
};

struct BoundaryCoefficients {
  Complex h = 0.0;
  Complex H = 0.0;
};

// kappa_k = rho_k - k, the localization offsets.
inline std::vector<Complex> kappa_of(const Spectrum& s) {
  std::vector<Complex> kap(s.values.size());
  for (int k = 0; k <= s.K(); ++k) kap[static_cast<size_t>(k)] = SpectralPoint(s[k]).rho - double(k);
  return kap;
}

// Trapezoid rule over [0, x_upto].
inline Complex quad_trapezoid(const SampledFunction& f, int upto) {
  if (upto < 0 || upto > f.n()) throw InputError("quad_trapezoid: node out of range");
  if (upto == 0) return Complex(0.0, 0.0);
  Complex acc = 0.5 * (f[0] + f[upto]);
  for (int i = 1; i < upto; ++i) acc += f[i];
  return acc * f.grid.step;
}

inline Complex quad_trapezoid(const SampledFunction& f) { return quad_trapezoid(f, f.n()); }

// All prefix integrals at once; out[i] = int_0^{x_i} f.
inline std::vector<Complex> cum_trapezoid(const SampledFunction& f) {
  std::vector<Complex> out(static_cast<size_t>(f.n()) + 1);
  out[0] = Complex(0.0, 0.0);
  const double half = 0.5 * f.grid.step;
  for (int i = 1; i <= f.n(); ++i) out[static_cast<size_t>(i)] = out[static_cast<size_t>(i - 1)] + half * (f[i - 1] + f[i]);
  return out;
}

inline double max_abs(const SampledFunction& f, int upto = -1) {
  if (upto < 0) upto = f.n();
  double m = 0.0;
  for (int i = 0; i <= upto; ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

// Trapezoid-weighted L2 norm over [0, x_upto].
inline double l2_norm(const SampledFunction& f, int upto = -1) {
  if (upto < 0) upto = f.n();
  if (upto == 0) return 0.0;
  double acc = 0.5 * (std::norm(f[0]) + std::norm(f[upto]));
  for (int i = 1; i < upto; ++i) acc += std::norm(f[i]);
  return std::sqrt(acc * f.grid.step);
}

}  // namespace convspec
