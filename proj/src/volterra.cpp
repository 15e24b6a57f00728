#include "convspec/volterra.hpp"

#include <cmath>
#include <utility>

#include "convspec/kernels.hpp"
#include "convspec/oscint.hpp"

namespace convspec {

namespace {

constexpr double kPowerTol = 1e-12;
constexpr int kPowerCap = 60;

}  // namespace

SampledFunction conv(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(a, b, "conv");
  const int n = a.grid.n;
  const double dx = a.grid.step;
  SampledFunction out(a.grid);
  for (int i = 1; i <= n; ++i) {
    Complex s = kernels::cdot_rev(a.data(), b.data(), i + 1);
    s -= 0.5 * (a[i] * b[0] + a[0] * b[i]);
    out.v[static_cast<size_t>(i)] = dx * s;
  }
  return out;
}

ConvPowerStack conv_powers(const SampledFunction& N, int nu_max) {
  ConvPowerStack st;
  st.p.push_back(N);
  if (nu_max > 0) {
    while (st.count() < nu_max) st.p.push_back(conv(N, st.p.back()));
    return st;
  }
  const double ref = kPowerTol * std::max(1.0, max_abs(N));
  double factor = kPi;  // pi^nu / nu! for the power just appended
  while (st.count() < kPowerCap && factor * max_abs(st.p.back()) >= ref) {
    st.p.push_back(conv(N, st.p.back()));
    factor *= kPi / st.count();
  }
  return st;
}

SampledFunction n_to_m(const SampledFunction& N) {
  const SampledFunction nn = conv(N, N);
  const std::vector<Complex> acc = cum_trapezoid(nn);
  SampledFunction out(N.grid);
  for (int i = 0; i <= N.grid.n; ++i)
    out.v[static_cast<size_t>(i)] = 2.0 * N[i] - acc[static_cast<size_t>(i)];
  return out;
}

SampledFunction m_to_n(const SampledFunction& M) {
  // Runs the n_to_m discretization backwards. At node i everything except the
  // diagonal terms of (N*N)_i is already known, so each step is one division.
  const int n = M.grid.n;
  const double dx = M.grid.step;
  SampledFunction N(M.grid);
  std::vector<Complex> nn(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
  N.v[0] = 0.5 * M[0];
  const Complex denom = 2.0 - 0.5 * dx * dx * N.v[0];
  if (std::abs(denom) < 0.5)
    throw ConvergenceError("m_to_n: node equation is singular; refine the grid");
  Complex acc(0.0, 0.0);  // trapezoid of nn up to the previous node
  for (int i = 1; i <= n; ++i) {
    const Complex interior =
        i >= 2 ? kernels::cdot_rev(&N.v[1], &N.v[1], i - 1) : Complex(0.0, 0.0);
    const Complex rhs = M[i] + acc + 0.5 * dx * nn[static_cast<size_t>(i) - 1] +
                        0.5 * dx * dx * interior;
    N.v[static_cast<size_t>(i)] = rhs / denom;
    nn[static_cast<size_t>(i)] = dx * (N.v[0] * N.v[static_cast<size_t>(i)] + interior);
    acc += 0.5 * dx * (nn[static_cast<size_t>(i) - 1] + nn[static_cast<size_t>(i)]);
  }
  return N;
}

namespace {

// (l dx)^nu / nu! tables advance in place from one nu to the next.
void advance_pow(std::vector<double>& tab, double dx, int nu) {
  for (size_t l = 0; l < tab.size(); ++l) tab[l] *= static_cast<double>(l) * dx / nu;
}

TriangularKernel build_p(const ConvPowerStack& st, Grid g) {
  TriangularKernel P(g);
  const int n = g.n;
  std::vector<double> pow(static_cast<size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) pow[static_cast<size_t>(l)] = l * g.step;
  for (int nu = 1; nu <= st.count(); ++nu) {
    if (nu > 1) advance_pow(pow, g.step, nu);
    const Complex* nv = st.power(nu).data();
    for (int i = 1; i <= n; ++i)
      kernels::fmadd_real_rev(&P.at(i, 0), pow.data(), nv, i + 1);
  }
  return P;
}

TriangularKernel build_px(const ConvPowerStack& st, Grid g) {
  TriangularKernel Px(g);
  const int n = g.n;
  std::vector<double> pow(static_cast<size_t>(n) + 1, 1.0);
  for (int mu = 0; mu < st.count(); ++mu) {
    if (mu >= 1) advance_pow(pow, g.step, mu);
    const Complex* nv = st.power(mu + 1).data();
    for (int i = 0; i <= n; ++i)
      kernels::fmadd_real_rev(&Px.at(i, 0), pow.data(), nv, i + 1);
  }
  return Px;
}

}  // namespace

TriangularKernel transformation_kernel(const SampledFunction& N, int nu_max) {
  return build_p(conv_powers(N, nu_max), N.grid);
}

KernelRep kernel_rep(const SampledFunction& N, int nu_max) {
  const ConvPowerStack st = conv_powers(N, nu_max);
  return KernelRep{build_p(st, N.grid), build_px(st, N.grid)};
}

PiSlices kernels_at_pi(const SampledFunction& N, int nu_max) {
  const ConvPowerStack st = conv_powers(N, nu_max);
  const Grid g = N.grid;
  const int n = g.n;
  const double dx = g.step;
  PiSlices out{SampledFunction(g), SampledFunction(g), SampledFunction(g),
               SampledFunction(g)};
  for (int j = 0; j <= n; ++j) {
    out.R.v[static_cast<size_t>(j)] = 1.0;
    out.Q.v[static_cast<size_t>(j)] = 1.0;
    out.K.v[static_cast<size_t>(j)] = g.x(j);
  }

  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<double> wprev(m, 1.0), wcur(m);  // (pi-t)^nu/nu! at nu-1 and nu
  std::vector<Complex> integ(m), cum(m);
  auto cumtrap = [&]() {
    cum[0] = Complex(0.0, 0.0);
    for (size_t j = 1; j < m; ++j)
      cum[j] = cum[j - 1] + 0.5 * dx * (integ[j - 1] + integ[j]);
  };

  for (int nu = 1; nu <= st.count(); ++nu) {
    for (size_t l = 0; l < m; ++l)
      wcur[l] = wprev[l] * (kPi - static_cast<double>(l) * dx) / nu;
    const SampledFunction& nv = st.power(nu);

    // weight (pi-t)^nu/nu!: feeds P pointwise, K and R through its integral
    for (size_t j = 0; j < m; ++j) integ[j] = wcur[j] * nv.v[j];
    cumtrap();
    for (int j = 0; j <= n; ++j) {
      const size_t js = static_cast<size_t>(j);
      out.P.v[js] += integ[js];  // pointwise term, not a quadrature
      out.K.v[js] += g.x(j) * cum[js];
      out.R.v[js] += cum[js];
    }
    for (size_t j = 0; j < m; ++j) integ[j] = g.x(static_cast<int>(j)) * integ[j];
    cumtrap();
    for (int j = 0; j <= n; ++j) out.K.v[static_cast<size_t>(j)] -= cum[static_cast<size_t>(j)];

    // weight (pi-t)^(nu-1)/(nu-1)!: the x-derivative pieces feeding R
    for (size_t j = 0; j < m; ++j) integ[j] = wprev[j] * nv.v[j];
    cumtrap();
    for (int j = 0; j <= n; ++j) out.R.v[static_cast<size_t>(j)] += g.x(j) * cum[static_cast<size_t>(j)];
    for (size_t j = 0; j < m; ++j) integ[j] = g.x(static_cast<int>(j)) * integ[j];
    cumtrap();
    for (int j = 0; j <= n; ++j) out.R.v[static_cast<size_t>(j)] -= cum[static_cast<size_t>(j)];

    // plain integral of the power; the slice weight sits outside for Q
    for (size_t j = 0; j < m; ++j) integ[j] = nv.v[j];
    cumtrap();
    for (int j = 0; j <= n; ++j)
      out.Q.v[static_cast<size_t>(j)] += wcur[static_cast<size_t>(j)] * cum[static_cast<size_t>(j)];

    wprev.swap(wcur);
  }
  return out;
}

namespace {

// prefix trapezoids int_0^{t_j} row dt and int_0^{t_j} t row dt
void row_moments(const Complex* row, int i, double dx, std::vector<Complex>& i0,
                 std::vector<Complex>& i1) {
  i0.assign(static_cast<size_t>(i) + 1, Complex(0.0, 0.0));
  i1.assign(static_cast<size_t>(i) + 1, Complex(0.0, 0.0));
  Complex a0(0.0, 0.0), a1(0.0, 0.0);
  for (int j = 1; j <= i; ++j) {
    a0 += 0.5 * dx * (row[j - 1] + row[j]);
    a1 += 0.5 * dx * ((j - 1) * dx * row[j - 1] + j * dx * row[j]);
    i0[static_cast<size_t>(j)] = a0;
    i1[static_cast<size_t>(j)] = a1;
  }
}

Complex tail_integral(const std::vector<Complex>& row, int i, double dx, Complex rho) {
  // int_0^{x_i} row(t) sin(rho (x_i - t)) dt; reversal turns it into filon_sin
  std::vector<Complex> rev(static_cast<size_t>(i) + 1);
  for (int j = 0; j <= i; ++j) rev[static_cast<size_t>(j)] = row[static_cast<size_t>(i - j)];
  return oscint::filon_sin(rev.data(), i, dx, rho);
}

}  // namespace

Complex eval_s(const KernelRep& rep, int i, const SpectralPoint& sp) {
  const double dx = rep.P.grid.step;
  std::vector<Complex> i0, i1;
  row_moments(rep.P.row(i), i, dx, i0, i1);
  std::vector<Complex> row(static_cast<size_t>(i) + 1);
  for (int j = 0; j <= i; ++j) {
    const size_t js = static_cast<size_t>(j);
    row[js] = rep.P.grid.x(j) * (1.0 + i0[js]) - i1[js];
  }
  return row[static_cast<size_t>(i)] - sp.rho * tail_integral(row, i, dx, sp.rho);
}

Complex eval_s_prime(const KernelRep& rep, int i, const SpectralPoint& sp) {
  const double dx = rep.P.grid.step;
  std::vector<Complex> i0, i1, j0, j1;
  row_moments(rep.P.row(i), i, dx, i0, i1);
  row_moments(rep.Px.row(i), i, dx, j0, j1);
  std::vector<Complex> row(static_cast<size_t>(i) + 1);
  for (int j = 0; j <= i; ++j) {
    const size_t js = static_cast<size_t>(j);
    row[js] = 1.0 + i0[js] + rep.P.grid.x(j) * j0[js] - j1[js];
  }
  return row[static_cast<size_t>(i)] - sp.rho * tail_integral(row, i, dx, sp.rho);
}

Complex eval_c(const KernelRep& rep, int i, const SpectralPoint& sp) {
  const double dx = rep.P.grid.step;
  std::vector<Complex> row(static_cast<size_t>(i) + 1);
  row[0] = 1.0;
  for (int j = 1; j <= i; ++j) {
    // slant line through grid points: the first argument lags x_i by t_j
    Complex s = 0.5 * (rep.P.at(i - j, 0) + rep.P.at(i, j));
    for (int l = 1; l < j; ++l) s += rep.P.at(i - j + l, l);
    row[static_cast<size_t>(j)] = 1.0 + dx * s;
  }
  return 1.0 - sp.rho * tail_integral(row, i, dx, sp.rho);
}

Complex eval_c_prime(const KernelRep& rep, int i, const SpectralPoint& sp) {
  const double dx = rep.P.grid.step;
  std::vector<Complex> row(rep.P.row(i), rep.P.row(i) + i + 1);
  return -sp.rho * std::sin(sp.rho * rep.P.grid.x(i)) -
         sp.rho * tail_integral(row, i, dx, sp.rho);
}

Complex eval_s_sin_form(const KernelRep& rep, int i, const SpectralPoint& sp) {
  const Grid g = rep.P.grid;
  const double dx = g.step;
  std::vector<Complex> row(rep.P.row(i), rep.P.row(i) + i + 1);
  if (std::abs(sp.rho) < 1e-8) {
    // sin(rho u)/rho collapses to u
    Complex acc(0.0, 0.0);
    for (int j = 1; j <= i; ++j)
      acc += 0.5 * dx *
             ((g.x(i) - g.x(j - 1)) * row[static_cast<size_t>(j) - 1] +
              (g.x(i) - g.x(j)) * row[static_cast<size_t>(j)]);
    return g.x(i) + acc;
  }
  return (std::sin(sp.rho * g.x(i)) + tail_integral(row, i, dx, sp.rho)) / sp.rho;
}

IdentityCheck c_identity_check(const TriangularKernel& P, const SpectralPoint& sp) {
  const Grid g = P.grid;
  const int n = g.n;
  const double dx = g.step;
  const Complex rho = sp.rho;
  const oscint::HatMoments hm = oscint::hat_moments(rho, dx);
  const Complex cq[2] = {hm.c0, hm.c1};
  const Complex sq[2] = {hm.s0, hm.s1};
  Complex eqr[2][2], fqr[2][2];
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r) {
      eqr[q][r] = cq[q] * cq[r] + sq[q] * sq[r];
      fqr[q][r] = sq[q] * cq[r] - cq[q] * sq[r];
    }

  const size_t m = static_cast<size_t>(n) + 1;
  std::vector<Complex> sn(m), cn(m), sa0(m), sa1(m), ca0(m), ca1(m);
  for (int i = 0; i <= n; ++i) {
    const size_t is = static_cast<size_t>(i);
    sn[is] = std::sin(rho * g.x(i));
    cn[is] = std::cos(rho * g.x(i));
    sa0[is] = sn[is] * cq[0] + cn[is] * sq[0];
    sa1[is] = sn[is] * cq[1] + cn[is] * sq[1];
    ca0[is] = cn[is] * cq[0] - sn[is] * sq[0];
    ca1[is] = cn[is] * cq[1] - sn[is] * sq[1];
  }

  IdentityCheck out;
  out.lhs.resize(m);
  out.rhs.resize(m);
  out.lhs[0] = out.rhs[0] = Complex(1.0, 0.0);
  out.max_diff = 0.0;
  Complex ta(0.0, 0.0), tb(0.0, 0.0);
  for (int mm = 1; mm <= n; ++mm) {
    const int i = mm - 1;  // cell row [x_i, x_{i+1}] enters at this prefix
    const size_t is = static_cast<size_t>(i);
    Complex rowa(0.0, 0.0), rowb(0.0, 0.0);
    for (int j = 0; j < i; ++j) {
      const size_t js = static_cast<size_t>(j);
      const Complex p00 = P.at(i, j), p01 = P.at(i, j + 1);
      const Complex p10 = P.at(i + 1, j), p11 = P.at(i + 1, j + 1);
      rowa += p00 * (sa0[is] * ca0[js] - ca0[is] * sa0[js]) +
              p10 * (sa1[is] * ca0[js] - ca1[is] * sa0[js]) +
              p01 * (sa0[is] * ca1[js] - ca0[is] * sa1[js]) +
              p11 * (sa1[is] * ca1[js] - ca1[is] * sa1[js]);
      const size_t l = static_cast<size_t>(i - j);
      rowb += sn[l] * (p00 * eqr[0][0] + p10 * eqr[1][0] + p01 * eqr[0][1] +
                       p11 * eqr[1][1]) +
              cn[l] * (p00 * fqr[0][0] + p10 * fqr[1][0] + p01 * fqr[0][1] +
                       p11 * fqr[1][1]);
    }
    ta += rowa;
    tb += rowb;
    const size_t ms = static_cast<size_t>(mm);
    const Complex base = std::cos(rho * g.x(mm));
    out.rhs[ms] = base - rho * ta;
    out.lhs[ms] = base - rho * tb;
    out.max_diff = std::max(out.max_diff, std::abs(out.lhs[ms] - out.rhs[ms]));
  }
  return out;
}

}  // namespace convspec
