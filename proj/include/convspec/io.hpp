#pragma once

#include <cstdint>
#include <string>

#include "convspec/grid.hpp"

// File formats: function tables and spectra as small CSV files, run
// parameters as a JSON manifest. Loads validate eagerly and name the first
// offending row; writes round-trip doubles exactly.

namespace convspec::io {

struct Manifest {
  int n = 512;
  Complex h = Complex(0.0, 0.0);
  Complex H = Complex(0.0, 0.0);
  int num_eigs = 100;  // highest eigenvalue index K; K+1 values are computed
  int nu_max = 0;      // series depth; 0 = adaptive
  double tol = 1e-9;
};

Manifest load_manifest(const std::string& path);

// header "x,re,im", nodes ascending over [0, pi]; rejects non-finite samples
SampledFunction load_function_csv(const std::string& path);
void save_function_csv(const std::string& path, const SampledFunction& f);

// header "k,re,im", indices dense from zero
Spectrum load_spectrum_csv(const std::string& path);
void save_spectrum_csv(const std::string& path, const Spectrum& s);

std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

}  // namespace convspec::io
