#include "convspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace convspec::io {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Complex parse_complex_field(const nlohmann::json& j, const char* key) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw InputError(std::string("manifest field '") + key +
                   "' must be a number or [re, im]");
}

// one CSV row of doubles; returns false on blank lines
bool split_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  size_t pos = 0;
  if (line.find_first_not_of(" \t\r") == std::string::npos) return false;
  while (pos <= line.size()) {
    const size_t comma = line.find(',', pos);
    const std::string field =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(field, &used);
    } catch (const std::exception&) {
      return false;
    }
    while (used < field.size() &&
           (field[used] == ' ' || field[used] == '\t' || field[used] == '\r'))
      ++used;
    if (used != field.size()) return false;
    out.push_back(val);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

std::string strip(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Manifest load_manifest(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("manifest " + path + ": " + e.what());
  }
  Manifest m;
  if (j.contains("n")) m.n = j["n"].get<int>();
  if (j.contains("h")) m.h = parse_complex_field(j["h"], "h");
  if (j.contains("H")) m.H = parse_complex_field(j["H"], "H");
  if (j.contains("num_eigs")) m.num_eigs = j["num_eigs"].get<int>();
  if (j.contains("nu_max")) m.nu_max = j["nu_max"].get<int>();
  if (j.contains("tol")) m.tol = j["tol"].get<double>();
  if (m.n < 2) throw InputError("manifest: n must be at least 2");
  if (m.num_eigs < 0) throw InputError("manifest: num_eigs must be nonnegative");
  if (!(m.tol > 0.0)) throw InputError("manifest: tol must be positive");
  return m;
}

SampledFunction load_function_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || strip(line) != "x,re,im")
    throw InputError(path + ": expected header x,re,im", 1);
  std::vector<double> xs;
  std::vector<Complex> vs;
  std::vector<double> row;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    if (!split_row(line, row) || row.size() != 3)
      throw InputError(path + ": malformed row", lineno);
    if (!std::isfinite(row[0]) || !std::isfinite(row[1]) || !std::isfinite(row[2]))
      throw InputError(path + ": non-finite value", lineno);
    xs.push_back(row[0]);
    vs.push_back(Complex(row[1], row[2]));
  }
  if (xs.size() < 3) throw InputError(path + ": need at least 3 rows", lineno);
  const int n = static_cast<int>(xs.size()) - 1;
  const Grid g(n);
  for (int i = 0; i <= n; ++i)
    if (std::abs(xs[static_cast<size_t>(i)] - g.x(i)) > 1e-9 * (1.0 + g.x(i)))
      throw InputError(path + ": x not on the uniform grid over [0, pi]", i + 2);
  SampledFunction f(g);
  f.v = std::move(vs);
  return f;
}

void save_function_csv(const std::string& path, const SampledFunction& f) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw InputError("cannot write " + path);
  std::fputs("x,re,im\n", out);
  for (int i = 0; i <= f.n(); ++i)
    std::fprintf(out, "%.17g,%.17g,%.17g\n", f.grid.x(i), f[i].real(), f[i].imag());
  std::fclose(out);
}

Spectrum load_spectrum_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || strip(line) != "k,re,im")
    throw InputError(path + ": expected header k,re,im", 1);
  Spectrum s;
  std::vector<double> row;
  int lineno = 1, k = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    if (!split_row(line, row) || row.size() != 3)
      throw InputError(path + ": malformed row", lineno);
    if (!std::isfinite(row[0]) || !std::isfinite(row[1]) || !std::isfinite(row[2]))
      throw InputError(path + ": non-finite value", lineno);
    if (row[0] != double(k))
      throw InputError(path + ": indices must run 0,1,2,... without gaps", lineno);
    s.values.push_back(Complex(row[1], row[2]));
    ++k;
  }
  if (s.values.empty()) throw InputError(path + ": no eigenvalues", lineno);
  return s;
}

void save_spectrum_csv(const std::string& path, const Spectrum& s) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw InputError("cannot write " + path);
  std::fputs("k,re,im\n", out);
  for (int k = 0; k <= s.K(); ++k)
    std::fprintf(out, "%d,%.17g,%.17g\n", k, s[k].real(), s[k].imag());
  std::fclose(out);
}

std::uint64_t fnv1a64_file(const std::string& path) {
  const std::string data = read_file(path);
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace convspec::io
