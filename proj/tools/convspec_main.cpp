#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convspec/forward.hpp"
#include "convspec/inverse.hpp"
#include "convspec/io.hpp"
#include "convspec/kernels.hpp"
#include "convspec/reconstruction.hpp"
#include "convspec/volterra.hpp"

using convspec::BoundaryCoefficients;
using convspec::CharFnModel;
using convspec::Complex;
using convspec::Grid;
using convspec::SampledFunction;
using convspec::SpectralPoint;
using convspec::Spectrum;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string manifest, kernel, spectrum, out;
  int num_eigs = -1;
  int grid_n = -1;
};

ordered_json cpx(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json cpx_list(const std::vector<Complex>& v) {
  ordered_json a = ordered_json::array();
  for (const Complex& z : v) a.push_back(cpx(z));
  return a;
}

// Reports are byte-stable for identical inputs, so the clock goes to stderr
// and the stdout field stays pinned.
void emit(ordered_json& rep, std::chrono::steady_clock::time_point t0) {
  rep["timing_ms"] = 0;
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::fprintf(stderr, "timing_ms %.1f\n", ms);
  std::fputs(rep.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
}

int emit_error(int code, const std::string& message, int row = -1) {
  ordered_json rep;
  rep["error"]["code"] = code;
  rep["error"]["message"] = message;
  if (row >= 0) rep["error"]["row"] = row;
  std::fputs(rep.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
  return code;
}

convspec::io::Manifest resolve_manifest(const Args& a) {
  convspec::io::Manifest m;
  if (!a.manifest.empty()) m = convspec::io::load_manifest(a.manifest);
  if (a.num_eigs >= 0) m.num_eigs = a.num_eigs;
  if (a.grid_n >= 0) {
    if (a.grid_n < 2) throw convspec::InputError("--grid-n must be at least 2");
    m.n = a.grid_n;
  }
  return m;
}

ordered_json params_block(const convspec::io::Manifest& m, int n_used) {
  ordered_json p;
  p["n"] = n_used;
  p["h"] = cpx(m.h);
  p["H"] = cpx(m.H);
  p["num_eigs"] = m.num_eigs;
  p["nu_max"] = m.nu_max;
  p["tol"] = m.tol;
  return p;
}

ordered_json input_block(const Args& a) {
  ordered_json in;
  in["manifest"] = a.manifest.empty()
                       ? "defaults"
                       : convspec::io::hex64(convspec::io::fnv1a64_file(a.manifest));
  if (!a.kernel.empty())
    in["kernel"] = convspec::io::hex64(convspec::io::fnv1a64_file(a.kernel));
  if (!a.spectrum.empty())
    in["spectrum"] = convspec::io::hex64(convspec::io::fnv1a64_file(a.spectrum));
  return in;
}

double clamp_tol(double tol) { return std::min(std::max(tol, 1e-13), 1e-4); }

int cmd_forward(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const convspec::io::Manifest mf = resolve_manifest(a);
  const SampledFunction M = convspec::io::load_function_csv(a.kernel);
  const SampledFunction N = convspec::m_to_n(M);
  const CharFnModel model =
      convspec::char_fn_model_from_kernel(N, {mf.h, mf.H}, mf.nu_max);
  const convspec::SpectrumResult res =
      convspec::find_spectrum_of_model(model, mf.num_eigs + 1, clamp_tol(mf.tol));
  convspec::io::save_spectrum_csv(a.out, res.spectrum);

  ordered_json rep;
  rep["command"] = "forward";
  rep["inputs"] = input_block(a);
  rep["params"] = params_block(mf, M.grid.n);
  rep["alpha"] = cpx(model.alpha);
  rep["eigenvalues"] = cpx_list(res.spectrum.values);
  rep["kappa"] = cpx_list(convspec::kappa_of(res.spectrum));
  rep["char_fn_evals"] = res.evals;
  rep["out"] = a.out;
  rep["warnings"] = res.warnings;
  emit(rep, t0);
  return 0;
}

// shared tail of both inverse commands
int finish_inverse(const Args& a, const convspec::io::Manifest& mf, const char* name,
                   const Spectrum& s, const convspec::InverseSolution& sol,
                   std::chrono::steady_clock::time_point t0, bool report_H) {
  convspec::io::save_function_csv(a.out, sol.M);

  // residual of the series equation, skipping the extrapolated last node
  const SampledFunction F = convspec::main_series_rhs(sol.N, sol.bc, mf.nu_max);
  const SampledFunction f = convspec::endpoint_data(sol.w, sol.bc);
  double resid = 0.0;
  for (int i = 0; i < F.n(); ++i) resid = std::max(resid, std::abs(F[i] - f[i]));

  ordered_json rep;
  rep["command"] = name;
  rep["inputs"] = input_block(a);
  rep["params"] = params_block(mf, mf.n);
  rep["alpha"] = cpx(sol.alpha);
  if (report_H) rep["H_recovered"] = cpx(sol.bc.H);
  rep["num_eigs_used"] = s.K();
  rep["series_residual_max"] = resid;
  rep["kernel_max"] = convspec::max_abs(sol.M);
  rep["out"] = a.out;
  rep["warnings"] = ordered_json::array();
  emit(rep, t0);
  return 0;
}

int cmd_inverse1(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const convspec::io::Manifest mf = resolve_manifest(a);
  const Spectrum s = convspec::io::load_spectrum_csv(a.spectrum);
  const convspec::InverseSolution sol =
      convspec::inverse_known_bc(s, {mf.h, mf.H}, Grid(mf.n), mf.nu_max);
  return finish_inverse(a, mf, "inverse1", s, sol, t0, false);
}

int cmd_inverse2(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const convspec::io::Manifest mf = resolve_manifest(a);
  const Spectrum s = convspec::io::load_spectrum_csv(a.spectrum);
  const convspec::InverseSolution sol =
      convspec::inverse_spectrum_only(s, Grid(mf.n), mf.nu_max);
  return finish_inverse(a, mf, "inverse2", s, sol, t0, true);
}

int cmd_roundtrip(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const convspec::io::Manifest mf = resolve_manifest(a);
  const SampledFunction M = convspec::io::load_function_csv(a.kernel);
  const Grid g = M.grid;
  const BoundaryCoefficients bc{mf.h, mf.H};

  const SampledFunction N = convspec::m_to_n(M);
  const CharFnModel model = convspec::char_fn_model_from_kernel(N, bc, mf.nu_max);
  const convspec::SpectrumResult fwd =
      convspec::find_spectrum_of_model(model, mf.num_eigs + 1, clamp_tol(mf.tol));

  const convspec::InverseSolution sol =
      convspec::inverse_known_bc(fwd.spectrum, bc, g, mf.nu_max);

  // compare kernels on [0, 0.9 pi]; sine truncation concentrates at the far end
  const int upto = (9 * g.n) / 10;
  SampledFunction diff(g);
  for (int i = 0; i <= g.n; ++i) diff.v[static_cast<size_t>(i)] = sol.M[i] - M[i];
  const double ref = convspec::l2_norm(M, upto);
  const double kernel_err = convspec::l2_norm(diff, upto) / (ref > 0.0 ? ref : 1.0);

  const SampledFunction N2 = convspec::m_to_n(sol.M);
  const CharFnModel model2 = convspec::char_fn_model_from_kernel(N2, bc, mf.nu_max);
  const convspec::SpectrumResult back =
      convspec::find_spectrum_of_model(model2, mf.num_eigs + 1, clamp_tol(mf.tol));
  double spec_dev = 0.0;
  for (int k = 0; k <= fwd.spectrum.K(); ++k)
    spec_dev = std::max(spec_dev, std::abs(back.spectrum[k] - fwd.spectrum[k]));

  if (!a.out.empty()) convspec::io::save_function_csv(a.out, sol.M);

  ordered_json rep;
  rep["command"] = "roundtrip";
  rep["inputs"] = input_block(a);
  rep["params"] = params_block(mf, g.n);
  rep["alpha"] = cpx(model.alpha);
  rep["kernel_l2_rel_09pi"] = kernel_err;
  rep["spectrum_max_dev"] = spec_dev;
  if (!a.out.empty()) rep["out"] = a.out;
  ordered_json warn = ordered_json::array();
  for (const std::string& w : fwd.warnings) warn.push_back(w);
  for (const std::string& w : back.warnings) warn.push_back(w);
  rep["warnings"] = warn;
  emit(rep, t0);
  return 0;
}

int cmd_validate(const Args& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const convspec::io::Manifest mf = resolve_manifest(a);
  const SampledFunction M = convspec::io::load_function_csv(a.kernel);
  const Grid g = M.grid;
  const int n = g.n;
  const BoundaryCoefficients bc{mf.h, mf.H};
  const SampledFunction N = convspec::m_to_n(M);

  ordered_json suites = ordered_json::array();
  bool all_ok = true;
  auto push = [&](const char* name, double measured, double bound, bool ok,
                  const char* note = nullptr) {
    ordered_json s;
    s["suite"] = name;
    s["measured"] = measured;
    s["bound"] = bound;
    s["pass"] = ok;
    if (note) s["note"] = note;
    suites.push_back(s);
    all_ok = all_ok && ok;
  };

  const std::vector<Complex> probes = {
      {0.5, 0.0}, {2.5, 0.0}, {6.3, 0.0},  {12.0, 0.0},
      {-1.0, 0.0}, {-1.5, 0.0}, {1.0, 1.0}, {4.0, 3.0}};

  // (a) one characteristic function, two representations
  auto two_path_diff = [&](const SampledFunction& Mk) {
    const SampledFunction Nk = convspec::m_to_n(Mk);
    const CharFnModel model = convspec::char_fn_model_from_kernel(Nk, bc, mf.nu_max);
    double worst = 0.0;
    for (const Complex& lam : probes) {
      const SpectralPoint sp(lam);
      const Complex d1 = convspec::char_fn_direct(Mk, sp, bc);
      const Complex d2 = convspec::char_fn_from_model(model, sp);
      worst = std::max(worst, std::abs(d1 - d2));
    }
    return worst;
  };
  const double diff_n = two_path_diff(M);
  const double scale = (512.0 / n) * (512.0 / n);
  push("char_fn_two_path", diff_n, 5e-4 * scale, diff_n <= 5e-4 * scale);

  // (b) the solution identity C = 1 - lambda int S on the same interpolant
  {
    const convspec::TriangularKernel P = convspec::transformation_kernel(N, mf.nu_max);
    double worst = 0.0;
    for (const Complex lam : {Complex(0.0, 0.0), Complex(4.0, 0.0), Complex(-9.0, 0.0)}) {
      const convspec::IdentityCheck chk = convspec::c_identity_check(P, SpectralPoint(lam));
      worst = std::max(worst, chk.max_diff);
    }
    push("c_vs_integral_of_s", worst, 1e-6, worst <= 1e-6);
  }

  // (c) product form against the model it came from
  {
    const CharFnModel model = convspec::char_fn_model_from_kernel(N, bc, mf.nu_max);
    const int count = mf.num_eigs + 1;
    const convspec::SpectrumResult sr =
        convspec::find_spectrum_of_model(model, count, clamp_tol(mf.tol));
    double worst = 0.0, bound = 0.0;
    for (const Complex& lam : {Complex(1.7, 0.0), Complex(-2.3, 0.0), Complex(7.9, 0.0),
                               Complex(0.4, 0.2)}) {
      const SpectralPoint sp(lam);
      const Complex pv = convspec::product_char_fn(sr.spectrum, sp);
      const Complex mv = convspec::char_fn_from_model(model, sp);
      worst = std::max(worst, std::abs(pv - mv));
      bound = std::max(bound, 6.0 / std::max(1, sr.spectrum.K()) * (1.0 + std::abs(mv)));
    }
    push("product_vs_model", worst, bound, worst <= bound);
  }

  // (d) order of accuracy under grid halving
  if (n % 2 == 0 && n >= 8) {
    SampledFunction Mh(Grid(n / 2));
    for (int i = 0; i <= n / 2; ++i) Mh.v[static_cast<size_t>(i)] = M[2 * i];
    const double diff_h = two_path_diff(Mh);
    if (diff_n < 1e-12 && diff_h < 1e-12) {
      push("order_of_accuracy", 0.0, 0.0, true, "both grids at rounding level");
    } else {
      const double ratio = diff_h / std::max(diff_n, 1e-300);
      push("order_of_accuracy", ratio, 7.0, ratio >= 2.2 && ratio <= 7.0,
           "coarse/fine discrepancy ratio, expect about 4");
    }
  } else {
    push("order_of_accuracy", 0.0, 0.0, true, "grid not halvable; skipped");
  }

  ordered_json rep;
  rep["command"] = "validate";
  rep["inputs"] = input_block(a);
  rep["params"] = params_block(mf, n);
  rep["kernels_backend"] = convspec::kernels::active_backend();
  rep["suites"] = suites;
  rep["ok"] = all_ok;
  emit(rep, t0);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forward and inverse spectral solver for the convolution operator "
               "-y'' + (M * y')(x) on (0, pi) with Robin boundary conditions"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* sub, bool kernel, bool spectrum, bool out_required) {
    sub->add_option("--manifest", args.manifest, "run parameters JSON");
    if (kernel)
      sub->add_option("--kernel", args.kernel, "kernel M as CSV x,re,im")->required();
    if (spectrum)
      sub->add_option("--spectrum", args.spectrum, "spectrum as CSV k,re,im")->required();
    auto* o = sub->add_option("--out", args.out, "output data file");
    if (out_required) o->required();
    sub->add_option("--num-eigs", args.num_eigs, "highest eigenvalue index K");
    sub->add_option("--grid-n", args.grid_n, "grid intervals for generated functions");
  };

  CLI::App* fwd = app.add_subcommand("forward", "kernel + (h, H) to spectrum");
  add_common(fwd, true, false, true);
  CLI::App* inv1 = app.add_subcommand("inverse1", "spectrum + (h, H) to kernel");
  add_common(inv1, false, true, true);
  CLI::App* inv2 = app.add_subcommand("inverse2", "spectrum alone to kernel and H");
  add_common(inv2, false, true, true);
  CLI::App* rt = app.add_subcommand("roundtrip", "forward, invert, forward again");
  add_common(rt, true, false, false);
  CLI::App* val = app.add_subcommand("validate", "cross-representation checks");
  add_common(val, true, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (fwd->parsed()) return cmd_forward(args);
    if (inv1->parsed()) return cmd_inverse1(args);
    if (inv2->parsed()) return cmd_inverse2(args);
    if (rt->parsed()) return cmd_roundtrip(args);
    if (val->parsed()) return cmd_validate(args);
  } catch (const convspec::InputError& e) {
    return emit_error(2, e.what(), e.row);
  } catch (const convspec::ConvergenceError& e) {
    return emit_error(3, e.what());
  } catch (const std::exception& e) {
    return emit_error(2, e.what());
  }
  return 2;
}
