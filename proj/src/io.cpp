#include "abscat/io.hpp"

#include "abscat/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace abscat::io {
namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

std::size_t parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw SchemaError("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

// Next line holding data; blank lines and column-name lines are skipped.
bool next_record(std::istream &in, std::string &line, std::vector<std::string_view> &fields,
                 std::size_t expected) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || std::isalpha(static_cast<unsigned char>(line.front())))
      continue;
    fields = split(line);
    if (fields.size() != expected)
      throw SchemaError("expected " + std::to_string(expected) + " fields in '" + line + "'");
    return true;
  }
  return false;
}

json bumps_to_json(const std::vector<gaugefield::GaussianBump> &bumps) {
  json arr = json::array();
  for (const auto &b : bumps)
    arr.push_back({{"center", {b.center.x, b.center.y}}, {"strength", b.strength}, {"width", b.width}});
  return arr;
}

double number_field(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw SchemaError(std::string("missing or non-numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::vector<gaugefield::GaussianBump> bumps_from_json(const json &j, const char *key) {
  std::vector<gaugefield::GaussianBump> out;
  if (!j.contains(key))
    return out;
  const json &arr = j.at(key);
  if (!arr.is_array())
    throw SchemaError(std::string("field '") + key + "' must be an array");
  for (const json &b : arr) {
    if (!b.is_object() || !b.contains("center") || !b.at("center").is_array() ||
        b.at("center").size() != 2 || !b.at("center")[0].is_number() || !b.at("center")[1].is_number())
      throw SchemaError(std::string("bump in '") + key + "' needs center [x, y]");
    gaugefield::GaussianBump bump;
    bump.center = {b.at("center")[0].get<double>(), b.at("center")[1].get<double>()};
    bump.strength = number_field(b, "strength");
    bump.width = number_field(b, "width");
    if (!(bump.width > 0.0))
      throw SchemaError("bump width must be positive");
    out.push_back(bump);
  }
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw SchemaError("expected a number, got '" + std::string(s) + "'");
  return v;
}

void write_wave_csv(std::ostream &out, std::span<const abwave::WaveSample> samples) {
  out << "x1,x2,re,im\n";
  for (const auto &s : samples)
    out << format_double(s.x.x) << ',' << format_double(s.x.y) << ','
        << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << '\n';
}

void write_kernel_csv(std::ostream &out, const smatrix::KernelGrid &g) {
  out << "n,delta_re,delta_im,alpha_hint\n"
      << g.size() << ',' << format_double(g.delta_coeff().real()) << ','
      << format_double(g.delta_coeff().imag()) << ','
      << (g.alpha_hint() ? format_double(*g.alpha_hint()) : std::string()) << '\n'
      << "j,k,re,im\n";
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k)
      out << j << ',' << k << ',' << format_double(g(j, k).real()) << ','
          << format_double(g(j, k).imag()) << '\n';
}

smatrix::KernelGrid read_kernel_csv(std::istream &in) {
  std::string line;
  std::vector<std::string_view> f;
  if (!next_record(in, line, f, 4))
    throw SchemaError("kernel CSV: missing header");
  const std::size_t n = parse_index(f[0]);
  if (n < 2)
    throw SchemaError("kernel CSV: n must be at least 2");
  const smatrix::cplx delta{parse_double(f[1]), parse_double(f[2])};
  std::optional<double> hint;
  if (!f[3].empty())
    hint = parse_double(f[3]);
  smatrix::KernelGrid g(n, delta, hint);
  std::size_t rows = 0;
  while (next_record(in, line, f, 4)) {
    const std::size_t j = parse_index(f[0]), k = parse_index(f[1]);
    if (j >= n || k >= n)
      throw SchemaError("kernel CSV: index out of range in '" + line + "'");
    g.set(j, k, {parse_double(f[2]), parse_double(f[3])});
    ++rows;
  }
  if (rows != n * n)
    throw SchemaError("kernel CSV: expected " + std::to_string(n * n) + " entries, found " +
                      std::to_string(rows));
  return g;
}

void write_sinogram_csv(std::ostream &out, const xray::Sinogram &s) {
  out << "n_p,n_phi,p_max\n"
      << s.n_p << ',' << s.n_phi << ',' << format_double(s.p_max) << '\n'
      << "i,j,value\n";
  for (std::size_t i = 0; i < s.n_p; ++i)
    for (std::size_t j = 0; j < s.n_phi; ++j)
      out << i << ',' << j << ',' << format_double(s.at(i, j)) << '\n';
}

xray::Sinogram read_sinogram_csv(std::istream &in) {
  std::string line;
  std::vector<std::string_view> f;
  if (!next_record(in, line, f, 3))
    throw SchemaError("sinogram CSV: missing header");
  const std::size_t n_p = parse_index(f[0]), n_phi = parse_index(f[1]);
  const double p_max = parse_double(f[2]);
  if (n_p < 2 || n_phi < 1 || !(p_max > 0.0))
    throw SchemaError("sinogram CSV: invalid dimensions");
  xray::Sinogram s(n_p, n_phi, p_max);
  std::size_t rows = 0;
  while (next_record(in, line, f, 3)) {
    const std::size_t i = parse_index(f[0]), j = parse_index(f[1]);
    if (i >= n_p || j >= n_phi)
      throw SchemaError("sinogram CSV: index out of range in '" + line + "'");
    s.at(i, j) = parse_double(f[2]);
    ++rows;
  }
  if (rows != n_p * n_phi)
    throw SchemaError("sinogram CSV: expected " + std::to_string(n_p * n_phi) + " rows, found " +
                      std::to_string(rows));
  return s;
}

void write_phase_sinogram_csv(std::ostream &out, const xray::Sinogram &raw) {
  out << "n_p,n_phi,p_max\n"
      << raw.n_p << ',' << raw.n_phi << ',' << format_double(raw.p_max) << '\n'
      << "i,j,re,im\n";
  for (std::size_t i = 0; i < raw.n_p; ++i)
    for (std::size_t j = 0; j < raw.n_phi; ++j) {
      const double v = raw.at(i, j);
      out << i << ',' << j << ',' << format_double(std::cos(v)) << ','
          << format_double(std::sin(v)) << '\n';
    }
}

void write_reconstruction_csv(std::ostream &out, const xray::Reconstruction &r) {
  out << "x1,x2,value\n";
  for (std::size_t row = 0; row < r.n; ++row)
    for (std::size_t col = 0; col < r.n; ++col) {
      const Vec2 c = r.pixel_center(row, col);
      out << format_double(c.x) << ',' << format_double(c.y) << ',' << format_double(r.at(row, col))
          << '\n';
    }
}

std::string potential_to_json(const gaugefield::VectorPotential &pot) {
  const json j = {{"alpha", pot.alpha},
                  {"bumps", bumps_to_json(pot.bumps)},
                  {"gradL", bumps_to_json(pot.grad_l)},
                  {"V", bumps_to_json(pot.scalar)},
                  {"R0", pot.r0}};
  return j.dump(2) + "\n";
}

gaugefield::VectorPotential potential_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError(std::string("potential JSON: ") + e.what());
  }
  if (!j.is_object())
    throw SchemaError("potential JSON must be an object");
  gaugefield::VectorPotential pot;
  pot.alpha = number_field(j, "alpha");
  pot.bumps = bumps_from_json(j, "bumps");
  pot.grad_l = bumps_from_json(j, "gradL");
  pot.scalar = bumps_from_json(j, "V");
  pot.r0 = j.contains("R0") ? number_field(j, "R0") : 0.0;
  return pot;
}

std::string verdict_to_json(const inverse::Verdict &v) {
  json j = {{"alpha", v.estimate.alpha.value_or(std::numeric_limits<double>::quiet_NaN())},
            {"ceil_alpha", v.estimate.ceil_alpha.value_or(0)},
            {"sin_pi_alpha", v.estimate.sin_pi_alpha},
            {"residual", v.estimate.residual},
            {"witness", v.witness}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace abscat::io
