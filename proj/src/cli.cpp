#include "abscat/cli.hpp"

#include "abscat/abwave.hpp"
#include "abscat/errors.hpp"
#include "abscat/gaugefield.hpp"
#include "abscat/inverse.hpp"
#include "abscat/io.hpp"
#include "abscat/smatrix.hpp"
#include "abscat/xray.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace abscat::cli {
namespace {

using nlohmann::json;

struct Options {
  unsigned threads = 1;
  std::uint64_t seed = 0;

  // wave
  double alpha = 0.0;
  double lambda = 1.0;
  double omega_angle = 0.0;
  std::string sign = "+";
  double extent = 5.0;
  std::size_t n = 64;
  int truncation = 0;

  // kernel
  std::size_t kernel_n = 256;
  double perturb = 0.0;
  double noise = 0.0;

  // shared inputs and outputs
  std::string config;
  std::string config2;
  std::string gauge;
  std::string kernel;
  std::string out;

  std::vector<double> radii{10.0, 20.0, 40.0};
  std::vector<double> eps{0.1, 0.05, 0.025};
  double strip_a = 0.0;
  double strip_b = std::numbers::pi;
  int modes = 8;
  bool no_convex = false;

  // radon
  std::size_t n_p = 257;
  std::size_t n_phi = 180;
  double p_max = 8.0;
  std::size_t grid = 128;
  std::string sinogram_in;
  std::string sinogram_out;

  // gauge-check
  int winding = 0;
  double exclusion = 2.0;
};

void emit(const std::string &path, std::ostream &fallback,
          const std::function<void(std::ostream &)> &write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw SchemaError("cannot write '" + path + "'");
  write(file);
}

gaugefield::VectorPotential load_potential(const std::string &path) {
  return io::potential_from_json(io::read_file(path));
}

smatrix::KernelGrid load_kernel(const std::string &path) {
  std::istringstream in(io::read_file(path));
  return io::read_kernel_csv(in);
}

json number_array(const std::vector<double> &v) {
  json a = json::array();
  for (double x : v)
    a.push_back(x);
  return a;
}

int cmd_wave(const Options &o, std::ostream &out) {
  const Vec2 omega = from_angle(o.omega_angle);
  const auto sign = o.sign == "-" ? abwave::WaveSign::Minus : abwave::WaveSign::Plus;
  auto spec = abwave::ABWaveSpec::for_radius(o.alpha, o.lambda, omega, sign, o.extent * std::sqrt(2.0));
  if (o.truncation > 0) {
    spec.truncation = o.truncation;
    spec.validate();
  }
  const auto samples = abwave::eval_grid(spec, o.extent, o.n, o.threads);
  emit(o.out, out, [&](std::ostream &s) { io::write_wave_csv(s, samples); });
  return kExitOk;
}

int cmd_kernel(const Options &o, std::ostream &out) {
  auto g = smatrix::sample_kernel(o.alpha, o.kernel_n);
  if (o.perturb != 0.0 || o.noise != 0.0) {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> gauss(0.0, o.noise);
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (j == k)
          continue;
        smatrix::cplx v = g(j, k) + o.perturb * std::cos(g.angle(j) + g.angle(k));
        if (o.noise != 0.0)
          v += smatrix::cplx{gauss(rng), gauss(rng)};
        g.set(j, k, v);
      }
  }
  emit(o.out, out, [&](std::ostream &s) { io::write_kernel_csv(s, g); });
  return kExitOk;
}

int cmd_flux(const Options &o, std::ostream &out, std::ostream &err) {
  const auto pot = load_potential(o.config);
  const auto res = gaugefield::flux(pot, o.radii);
  if (!res.converged)
    err << "warning: " << res.warning << '\n';
  const json j = {{"alpha", res.estimate}};
  emit(o.out, out, [&](std::ostream &s) { s << j.dump() << '\n'; });
  return kExitOk;
}

int cmd_strip(const Options &o, std::ostream &out) {
  const auto g = load_kernel(o.kernel);
  std::vector<smatrix::StripDomain> strips;
  for (double e : o.eps)
    strips.push_back({o.strip_a, o.strip_b, e});
  const auto fit = inverse::fit_strips(g, strips);
  const json j = {{"eps", number_array(fit.eps)},
                  {"normalized", number_array(fit.normalized)},
                  {"sin_pi_alpha", fit.estimate.sin_pi_alpha},
                  {"residual", fit.estimate.residual}};
  emit(o.out, out, [&](std::ostream &s) { s << j.dump(2) << '\n'; });
  return kExitOk;
}

int cmd_recover(const Options &o, std::ostream &out) {
  const auto g = load_kernel(o.kernel);
  const auto strips = inverse::default_strips(o.eps);
  const auto verdict = inverse::identify_flux(g, !o.no_convex, strips, o.modes);
  emit(o.out, out, [&](std::ostream &s) { s << io::verdict_to_json(verdict); });
  return kExitOk;
}

int cmd_radon(const Options &o, std::ostream &out, std::ostream &err) {
  xray::Sinogram sino;
  if (!o.sinogram_in.empty()) {
    std::istringstream in(io::read_file(o.sinogram_in));
    sino = io::read_sinogram_csv(in);
  } else {
    if (o.config.empty())
      throw SchemaError("radon needs --config or --sinogram");
    sino = xray::radon_forward(load_potential(o.config), o.n_p, o.n_phi, o.p_max, o.threads);
  }
  if (!o.sinogram_out.empty())
    emit(o.sinogram_out, out, [&](std::ostream &s) { io::write_sinogram_csv(s, sino); });
  const auto rec = xray::radon_invert(sino, o.grid, o.threads);
  for (const auto &w : rec.warnings)
    err << "warning: " << w << '\n';
  emit(o.out, out, [&](std::ostream &s) { io::write_reconstruction_csv(s, rec); });
  return kExitOk;
}

int cmd_gauge_check(const Options &o, std::ostream &out) {
  const auto pot1 = load_potential(o.config);
  gaugefield::VectorPotential pot2;
  if (!o.config2.empty()) {
    pot2 = load_potential(o.config2);
  } else {
    gaugefield::GaugeElement g;
    g.n = o.winding;
    if (!o.gauge.empty()) {
      // a gauge file is a potential whose "bumps" list gives L
      g.l = io::potential_from_json(io::read_file(o.gauge)).bumps;
    }
    pot2 = gaugefield::gauge_transform(pot1, g);
  }
  const auto s1 = xray::raw_phase_sinogram(pot1, o.n_p, o.n_phi, o.p_max, o.threads);
  const auto s2 = xray::raw_phase_sinogram(pot2, o.n_p, o.n_phi, o.p_max, o.threads);
  const auto report = xray::flux_parity_test(s1, s2, o.exclusion);
  json j = {{"phases_match", report.phases_match},
            {"max_phase_discrepancy", report.max_phase_discrepancy},
            {"lines_used", report.lines_used}};
  j["certificate"] = report.phases_match ? json(report.certificate) : json(nullptr);
  emit(o.out, out, [&](std::ostream &s) { s << j.dump(2) << '\n'; });
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Aharonov-Bohm scattering and flux recovery"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", o.threads, "worker threads for grid evaluation");
  app.add_option("--seed", o.seed, "seed for synthetic noise");

  auto *wave = app.add_subcommand("wave", "evaluate the distorted plane wave on a square grid");
  wave->add_option("--alpha", o.alpha, "flux")->required();
  wave->add_option("--lambda", o.lambda, "energy");
  wave->add_option("--omega-angle", o.omega_angle, "incident direction angle (radians)");
  wave->add_option("--sign", o.sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
  wave->add_option("--extent", o.extent, "half-width of the grid");
  wave->add_option("--n", o.n, "grid points per side")->check(CLI::Range(2, 4096));
  wave->add_option("--truncation", o.truncation, "partial waves |l| <= L (0 = automatic)");
  wave->add_option("--out", o.out, "CSV path");

  auto *kernel = app.add_subcommand("kernel", "sample the scattering kernel on a uniform grid");
  kernel->add_option("--alpha", o.alpha, "flux")->required();
  kernel->add_option("--n", o.kernel_n, "grid size")->check(CLI::Range(64, 8192));
  kernel->add_option("--perturb", o.perturb, "add eta * cos(theta + theta')");
  kernel->add_option("--noise", o.noise, "Gaussian noise level (uses --seed)");
  kernel->add_option("--out", o.out, "CSV path");

  auto *flux = app.add_subcommand("flux", "circulation of a potential on large circles");
  flux->add_option("--config", o.config, "potential JSON")->required()->check(CLI::ExistingFile);
  flux->add_option("--radii", o.radii, "ascending radii")->delimiter(',');
  flux->add_option("--out", o.out, "JSON path");

  auto *strip = app.add_subcommand("strip", "near-diagonal strip integrals of a kernel");
  strip->add_option("--kernel", o.kernel, "kernel CSV")->required()->check(CLI::ExistingFile);
  strip->add_option("--eps", o.eps, "strip widths")->delimiter(',');
  strip->add_option("--a", o.strip_a, "strip start angle");
  strip->add_option("--b", o.strip_b, "strip end angle");
  strip->add_option("--out", o.out, "JSON path");

  auto *recover = app.add_subcommand("recover", "recover the flux from a kernel");
  recover->add_option("--kernel", o.kernel, "kernel CSV")->required()->check(CLI::ExistingFile);
  recover->add_option("--strips", o.eps, "strip widths")->delimiter(',');
  recover->add_option("--modes", o.modes, "mode window |m| <= M")->check(CLI::Range(1, 1000));
  recover->add_flag("--no-convex", o.no_convex, "obstacle not known to be convex");
  recover->add_option("--out", o.out, "JSON path");

  auto *radon = app.add_subcommand("radon", "sinogram of V and its filtered back-projection");
  radon->add_option("--config", o.config, "potential JSON")->check(CLI::ExistingFile);
  radon->add_option("--sinogram", o.sinogram_in, "invert this sinogram CSV")->check(CLI::ExistingFile);
  radon->add_option("--n-p", o.n_p, "detector offsets")->check(CLI::Range(64, 1 << 16));
  radon->add_option("--n-phi", o.n_phi, "angles")->check(CLI::Range(64, 1 << 16));
  radon->add_option("--p-max", o.p_max, "largest offset");
  radon->add_option("--grid", o.grid, "pixels per side")->check(CLI::Range(2, 8192));
  radon->add_option("--sinogram-out", o.sinogram_out, "write the sinogram CSV");
  radon->add_option("--out", o.out, "reconstruction CSV path");

  auto *gauge = app.add_subcommand("gauge-check", "compare line phases of two potentials");
  gauge->add_option("--config", o.config, "potential JSON")->required()->check(CLI::ExistingFile);
  gauge->add_option("--config2", o.config2, "second potential JSON")->check(CLI::ExistingFile);
  gauge->add_option("--winding", o.winding, "gauge winding applied to --config");
  gauge->add_option("--gauge", o.gauge, "JSON whose bumps define L")->check(CLI::ExistingFile);
  gauge->add_option("--exclusion", o.exclusion, "skip lines with |p| below this");
  gauge->add_option("--n-p", o.n_p, "detector offsets")->check(CLI::Range(64, 1 << 16));
  gauge->add_option("--n-phi", o.n_phi, "angles")->check(CLI::Range(64, 1 << 16));
  gauge->add_option("--p-max", o.p_max, "largest offset");
  gauge->add_option("--out", o.out, "JSON path");

  std::vector<std::string> argv_store{"abscat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_store)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }

  try {
    if (*wave)
      return cmd_wave(o, out);
    if (*kernel)
      return cmd_kernel(o, out);
    if (*flux)
      return cmd_flux(o, out, err);
    if (*strip)
      return cmd_strip(o, out);
    if (*recover)
      return cmd_recover(o, out);
    if (*radon)
      return cmd_radon(o, out, err);
    if (*gauge)
      return cmd_gauge_check(o, out);
  } catch (const SchemaError &e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const NumericError &e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitSchema;
}

} // namespace abscat::cli
