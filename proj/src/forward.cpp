#include "convspec/forward.hpp"

#include <algorithm>
#include <cmath>

#include "convspec/kernels.hpp"
#include "convspec/oscint.hpp"

namespace convspec {

namespace {

// second-order derivative table, one-sided at the ends
std::vector<Complex> diff_table(const SampledFunction& f) {
  const int n = f.grid.n;
  const double h = f.grid.step;
  std::vector<Complex> d(static_cast<size_t>(n) + 1);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int i = 1; i < n; ++i)
    d[static_cast<size_t>(i)] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[static_cast<size_t>(n)] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return d;
}

}  // namespace

IvpSolution solve_ivp(const SampledFunction& M, const SpectralPoint& sp,
                      Complex y0, Complex v0) {
  require_finite(M, "solve_ivp");
  const Grid g = M.grid;
  const int n = g.n;
  const double h = g.step;
  const Complex rho = sp.rho, lambda = sp.lambda;
  const Complex z = rho * h;

  const Complex cz = std::cos(z), sz = std::sin(z);
  const Complex q0 = h * oscint::sinc(z);
  const Complex N0 = h * h * oscint::cosm1_over_z2(z);
  const Complex N1 = h * h * h * oscint::zmsin_over_z3(z);
  const Complex N2 = h * h * h * h * oscint::z2cos_over_z4(z);

  const std::vector<Complex> Mp = diff_table(M);

  IvpSolution out{SampledFunction(g), SampledFunction(g)};
  std::vector<Complex> gv(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
  out.y.v[0] = y0;
  out.v.v[0] = v0;

  // coefficients of the corrected-trapezoid closure for the new forcing value
  const Complex Gg = -(h * h / 12.0) * M[0];
  const Complex Gv = 0.5 * h * M[0] + (h * h / 12.0) * Mp[0];
  const Complex Gy = (h * h / 12.0) * lambda * M[0];

  for (int i = 0; i < n; ++i) {
    const size_t is = static_cast<size_t>(i);
    const Complex yi = out.y.v[is], vi = out.v.v[is];
    Complex Y0, V0, Yg, Vg;
    if (i == 0) {
      // no history yet: forcing is linear through (0, g1)
      Y0 = cz * yi + q0 * vi;
      V0 = -rho * sz * yi + cz * vi;
      Yg = N1 / h;
      Vg = N0 / h;
    } else {
      const Complex gm = gv[is - 1], gi = gv[is];
      const Complex bk = -gm / (2.0 * h);
      const Complex ck = (gm - 2.0 * gi) / (2.0 * h * h);
      Y0 = cz * yi + q0 * vi + gi * N0 + bk * N1 + ck * N2;
      V0 = -rho * sz * yi + cz * vi + gi * q0 + bk * N0 + ck * 2.0 * N1;
      Yg = N1 / (2.0 * h) + N2 / (2.0 * h * h);
      Vg = N0 / (2.0 * h) + N1 / (h * h);
    }

    const int ip = i + 1;
    const size_t ips = static_cast<size_t>(ip);
    const Complex interior =
        ip >= 2 ? kernels::cdot_rev(&M.v[1], &out.v.v[1], ip - 1) : Complex(0.0, 0.0);
    const Complex Gc =
        h * (0.5 * M[ip] * v0 + interior) +
        (h * h / 12.0) * (-Mp[ips] * v0 - lambda * M[ip] * y0);

    const Complex denom = 1.0 - Gg - Gv * Vg - Gy * Yg;
    if (std::abs(denom) < 0.25)
      throw ConvergenceError("solve_ivp: forcing closure near-singular; refine the grid");
    const Complex gn = (Gc + Gv * V0 + Gy * Y0) / denom;
    gv[ips] = gn;
    out.y.v[ips] = Y0 + Yg * gn;
    out.v.v[ips] = V0 + Vg * gn;
  }
  return out;
}

Complex char_fn_direct(const SampledFunction& M, const SpectralPoint& sp,
                       const BoundaryCoefficients& bc) {
  const IvpSolution phi = solve_ivp(M, sp, 1.0, bc.h);
  return phi.v_end() + bc.H * phi.y_end();
}

Complex char_fn_direct_cs(const SampledFunction& M, const SpectralPoint& sp,
                          const BoundaryCoefficients& bc) {
  const IvpSolution c = solve_ivp(M, sp, 1.0, 0.0);
  const IvpSolution s = solve_ivp(M, sp, 0.0, 1.0);
  return c.v_end() + bc.h * s.v_end() + bc.H * (c.y_end() + bc.h * s.y_end());
}

CharFnModel char_fn_model_from_kernel(const SampledFunction& N,
                                      const BoundaryCoefficients& bc, int nu_max) {
  const PiSlices sl = kernels_at_pi(N, nu_max);
  const int n = N.grid.n;
  CharFnModel m{Complex(0.0, 0.0), SampledFunction(N.grid)};
  m.alpha = bc.h * sl.R[n] + bc.H + bc.h * bc.H * sl.K[n];
  for (int i = 0; i <= n; ++i) {
    const int j = n - i;  // mirrored argument
    m.w.v[static_cast<size_t>(i)] =
        -(sl.P[j] + bc.h * sl.R[j] + bc.H * sl.Q[j] + bc.h * bc.H * sl.K[j]);
  }
  return m;
}

Complex char_fn_from_model(const CharFnModel& model, const SpectralPoint& sp) {
  const Complex rho = sp.rho;
  const Complex osc =
      oscint::filon_sin(model.w.data(), model.w.n(), model.w.grid.step, rho);
  return -rho * std::sin(rho * kPi) + model.alpha + rho * osc;
}

namespace {

constexpr double kDiscSlack = 0.5 + 1e-9;

struct RootRecord {
  Complex lambda;
  double deriv_scale;  // |dDelta/dlambda| observed at convergence
};

class RootFinder {
 public:
  RootFinder(const CharFn& f, int count, double tol)
      : f_(f), count_(count), tol_(tol) {}

  long evals = 0;
  std::vector<std::string> warnings;
  std::vector<RootRecord> roots;

  Complex eval(Complex lam) {
    ++evals;
    return f_(SpectralPoint(lam));
  }

  // Newton with central-difference derivative; the iterate is either lambda
  // itself or rho. Returns the root index, or -1 without convergence.
  int newton(Complex start, bool in_rho) {
    Complex x = start;
    const double cap = (count_ + 20.0) * (count_ + 20.0);
    double last_deriv = 0.0;
    bool settled = false;
    for (int it = 0; it < 60; ++it) {
      const double scale = 1.0 + std::abs(x);
      const double d = 1e-6 * scale;
      const Complex fp = eval(value_of(x + d, in_rho));
      const Complex fm = eval(value_of(x - d, in_rho));
      const Complex fc = eval(value_of(x, in_rho));
      if (!std::isfinite(std::abs(fc)) || !std::isfinite(std::abs(fp))) return -1;
      const Complex df = (fp - fm) / (2.0 * d);
      if (std::abs(df) == 0.0) return -1;
      const Complex step = fc / df;
      x -= step;
      if (std::abs(value_of(x, in_rho)) > cap) return -1;
      last_deriv = std::abs(df);
      if (settled) break;  // the post-convergence polish ran; stop here
      if (std::abs(step) <= tol_ * scale) settled = true;
    }
    if (!settled) return -1;
    // report the derivative on the lambda scale whichever variable iterated
    const double dscale =
        in_rho ? last_deriv / std::max(2.0 * std::abs(x), 1e-3) : last_deriv;
    return record(value_of(x, in_rho), dscale);
  }

  // dedup happens here; returns the root index
  int record(Complex lam, double deriv) {
    for (size_t r = 0; r < roots.size(); ++r)
      if (std::abs(roots[r].lambda - lam) <= 1e-8 * (1.0 + std::abs(lam)))
        return static_cast<int>(r);
    if (deriv < 1e-6)
      warnings.push_back("characteristic derivative nearly vanishes near a root; "
                         "a multiple eigenvalue is likely and ordering may be unstable");
    roots.push_back(RootRecord{lam, deriv});
    return static_cast<int>(roots.size()) - 1;
  }

 private:
  static Complex value_of(Complex x, bool in_rho) { return in_rho ? x * x : x; }

  const CharFn& f_;
  int count_;
  double tol_;
};

}  // namespace

SpectrumResult find_spectrum(const CharFn& f, int count, double tol) {
  if (count < 1) throw InputError("find_spectrum: need at least one eigenvalue");
  if (!(tol > 0.0) || tol > 1e-3)
    throw InputError("find_spectrum: tol must lie in (0, 1e-3]");
  RootFinder rf(f, count, tol);

  // one launch per index from the classical location
  for (int k = 0; k < count; ++k) {
    if (k == 0)
      rf.newton(Complex(0.0, 0.0), false);
    else
      rf.newton(Complex(double(k), 0.0), true);
  }

  // Indices follow ascending (Re, Im) order over the distinct roots found;
  // the count smallest are reported. Low indices may crowd one unit disc and
  // leave a neighbor empty, so discs only steer the search for holes, they
  // do not assign labels.
  auto rho_of = [](Complex lam) { return SpectralPoint::branch_sqrt(lam); };
  auto sorted_roots = [&] {
    std::vector<Complex> v;
    v.reserve(rf.roots.size());
    for (const RootRecord& r : rf.roots) v.push_back(r.lambda);
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    return v;
  };
  auto anchored = [&](const std::vector<Complex>& v) {
    return static_cast<int>(v.size()) >= count &&
           rho_of(v[static_cast<size_t>(count - 1)]).real() < count - kDiscSlack + 1.0;
  };

  std::vector<char> disc_probed(static_cast<size_t>(count), 0);
  bool neg_probed = false;
  int gap_rounds = 0;
  for (int round = 0; round < 6; ++round) {
    std::vector<Complex> v = sorted_roots();
    if (anchored(v)) break;

    std::vector<char> occupied(static_cast<size_t>(count), 0);
    for (const Complex& lam : v) {
      const Complex rho = rho_of(lam);
      const int d = std::max(0, static_cast<int>(std::llround(rho.real())));
      if (d < count && std::abs(rho - double(d)) <= kDiscSlack)
        occupied[static_cast<size_t>(d)] = 1;
    }

    bool progress = false;
    for (int d = 0; d < count; ++d) {
      if (occupied[static_cast<size_t>(d)] || disc_probed[static_cast<size_t>(d)]) continue;
      disc_probed[static_cast<size_t>(d)] = 1;
      progress = true;
      for (double t : {-0.45, -0.3, -0.15, 0.15, 0.3, 0.45}) {
        const double r0 = d + t;
        rf.newton(Complex(r0 * std::abs(r0), 0.0), false);
      }
      rf.newton(Complex(double(d), 0.3) * Complex(double(d), 0.3), false);
      rf.newton(Complex(double(d), -0.3) * Complex(double(d), -0.3), false);
    }
    if (static_cast<int>(rf.roots.size()) < count) {
      if (!neg_probed) {
        neg_probed = true;
        progress = true;
        for (double neg : {-0.25, -0.5, -1.0, -2.0, -4.0, -8.0, -16.0, -32.0})
          rf.newton(Complex(neg, 0.0), false);
      }
      // a skipped unit disc shows up as a long gap in Re rho
      if (gap_rounds < 2) {
        ++gap_rounds;
        progress = true;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
          const double a = rho_of(v[i]).real(), b = rho_of(v[i + 1]).real();
          if (b - a > 1.2 && a < count + 0.5) {
            const double mid = 0.5 * (a + b);
            rf.newton(Complex(mid * mid, 0.0), false);
          }
        }
      }
    }
    if (!progress) break;
  }

  std::vector<Complex> v = sorted_roots();
  if (static_cast<int>(v.size()) < count)
    throw ConvergenceError("find_spectrum: found " + std::to_string(v.size()) +
                           " eigenvalues of the requested " + std::to_string(count));
  for (int k = 1; k < count; ++k)
    if (std::abs(rho_of(v[static_cast<size_t>(k)]) - double(k)) > kDiscSlack) {
      rf.warnings.push_back("eigenvalue labels follow ascending order; index " +
                            std::to_string(k) + " sits off its asymptotic disc");
      break;
    }

  SpectrumResult out;
  out.spectrum.values.assign(v.begin(), v.begin() + count);
  out.warnings = std::move(rf.warnings);
  out.evals = rf.evals;
  return out;
}

SpectrumResult find_spectrum_of_model(const CharFnModel& model, int count,
                                      double tol) {
  const CharFn f = [&model](const SpectralPoint& sp) {
    return char_fn_from_model(model, sp);
  };
  return find_spectrum(f, count, tol);
}

}  // namespace convspec
