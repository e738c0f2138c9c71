// Command-line front end. Talks to the engine exclusively through gfk.h.
//
// Exit codes:
//   0  success
//   1  unexpected internal error
//   2  configuration error (parse error, unknown key, out-of-range value)
//   3  regularization validation failed
//   4  numerical failure (degenerate weights, non-finite walker, grid not converged)
//   5  I/O error

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfk/gfk.h"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kValidation = 3, kNumerical = 4, kIo = 5 };

int exit_code_for(gfk_status status) {
  switch (status) {
    case GFK_OK: return kOk;
    case GFK_ERR_PARSE:
    case GFK_ERR_RANGE:
    case GFK_ERR_INVALID_ARGUMENT:
    case GFK_ERR_TOO_FEW_PARTICLES:
    case GFK_ERR_DIVISION_BY_ZERO: return kConfig;
    case GFK_ERR_REGULARIZATION: return kValidation;
    case GFK_ERR_DEGENERATE_WEIGHTS:
    case GFK_ERR_NONFINITE_WALKER:
    case GFK_ERR_GRID_NOT_CONVERGED: return kNumerical;
    case GFK_ERR_IO: return kIo;
    default: return kInternal;
  }
}

int report(gfk_status status, const std::string& context) {
  std::cerr << "gfk: " << context << ": " << gfk_status_name(status) << ": " << gfk_last_error() << "\n";
  return exit_code_for(status);
}

struct SpecHandle {
  gfk_spec* ptr = nullptr;
  ~SpecHandle() { gfk_spec_destroy(ptr); }
};

struct ResultHandle {
  gfk_result* ptr = nullptr;
  ~ResultHandle() { gfk_result_destroy(ptr); }
};

std::string spec_value(const gfk_spec* spec, const char* key) {
  size_t needed = 0;
  gfk_spec_get(spec, key, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  gfk_spec_get(spec, key, buf.data(), buf.size(), &needed);
  buf.resize(needed ? needed - 1 : 0);
  return buf;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Config file plus per-key flags; flags override the file.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    for (size_t i = 0; i < gfk_config_key_count(); ++i) {
      const std::string key = gfk_config_key(i);
      app->add_option_function<std::string>(
          "--" + key, [this, key](const std::string& v) { overrides[key] = v; }, "override config key " + key);
    }
  }

  gfk_status build(SpecHandle& spec) const {
    std::string text;
    if (!config_path.empty()) {
      auto contents = read_file(config_path);
      if (!contents) {
        std::cerr << "gfk: cannot read " << config_path << "\n";
        return GFK_ERR_IO;
      }
      text = *contents;
    }
    // Overrides are appended as extra lines so they pass through the same
    // parser (and the sigma_tilde default for a new g_tilde still applies).
    for (const auto& [k, v] : overrides) text += "\n" + k + "=" + v;
    return gfk_spec_parse(text.c_str(), &spec.ptr);
  }
};

void progress_to_stderr(size_t done, size_t total, void*) {
  const size_t step = total >= 10 ? total / 10 : 1;
  if (done % step == 0 || done == total) {
    std::cerr << "[gfk] " << done << "/" << total << " trajectories\n";
  }
}

gfk_format format_of(const gfk_spec* spec) {
  return spec_value(spec, "format") == "json" ? GFK_FORMAT_JSON : GFK_FORMAT_CSV;
}

int cmd_run(const ConfigOptions& cfg, bool force, bool quiet) {
  SpecHandle spec;
  if (auto s = cfg.build(spec); s != GFK_OK) return report(s, "config");
  ResultHandle result;
  if (auto s = gfk_run(spec.ptr, force, quiet ? nullptr : progress_to_stderr, nullptr, &result.ptr); s != GFK_OK)
    return report(s, "run");
  const std::string path = spec_value(spec.ptr, "output");
  if (!path.empty()) {
    if (auto s = gfk_result_write(result.ptr, path.c_str(), format_of(spec.ptr)); s != GFK_OK)
      return report(s, "write");
  }
  size_t needed = 0;
  gfk_result_summary(result.ptr, nullptr, 0, &needed);
  std::string line(needed, '\0');
  gfk_result_summary(result.ptr, line.data(), line.size(), &needed);
  line.resize(needed - 1);
  std::cout << line << "\n";
  return kOk;
}

std::optional<std::vector<gfk_sweep_row>> read_rows(const std::string& path) {
  auto text = read_file(path);
  if (!text) return std::nullopt;
  std::vector<gfk_sweep_row> rows;
  std::istringstream is(*text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.find_first_of("0123456789") != 0) continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    gfk_sweep_row row{};
    if (ls >> row.g_tilde >> row.sigma_tilde) rows.push_back(row);
  }
  return rows;
}

int cmd_sweep(const ConfigOptions& cfg, const std::string& rows_path, bool force, bool quiet) {
  SpecHandle spec;
  if (auto s = cfg.build(spec); s != GFK_OK) return report(s, "config");
  std::vector<gfk_sweep_row> rows;
  if (rows_path.empty()) {
    for (size_t i = 0; i < gfk_reference_row_count(); ++i) {
      gfk_sweep_row row{};
      gfk_reference_row(i, &row);
      rows.push_back(row);
    }
  } else {
    auto parsed = read_rows(rows_path);
    if (!parsed) {
      std::cerr << "gfk: cannot read rows file " << rows_path << "\n";
      return kIo;
    }
    rows = *parsed;
  }
  std::string path = spec_value(spec.ptr, "output");
  if (path.empty()) path = format_of(spec.ptr) == GFK_FORMAT_JSON ? "sweep.json" : "sweep.csv";
  size_t failed = 0;
  if (auto s = gfk_sweep(spec.ptr, rows.data(), rows.size(), force, quiet ? nullptr : progress_to_stderr, nullptr,
                         path.c_str(), format_of(spec.ptr), &failed);
      s != GFK_OK)
    return report(s, "sweep");
  std::cout << "sweep: " << rows.size() << " rows, " << failed << " failed, written to " << path << "\n";
  return kOk;
}

int cmd_theory(double g, double n) {
  gfk_theory_report r{};
  if (auto s = gfk_theory(g, n, &r); s != GFK_OK) return report(s, "theory");
  std::printf("g_tilde                        %.6g\n", g);
  std::printf("N                              %.6g\n", n);
  std::printf("<V_rel^2>(t=0)                 %.6g\n", r.vrel_variance);
  std::printf("<X_rel^2>(t=T/4)               %.6g\n", r.quarter_period_xrel_variance);
  std::printf("<(x1-x2)^2>(t=T/4)             %.6g\n", r.pair_variance);
  std::printf("1/(g N)^2                      %.6g\n", r.validity_lhs);
  std::printf("condition (a) bound            %.6g  ratio %.6g\n", r.bound_a, r.ratio_a);
  std::printf("condition (b) bound            %.6g  ratio %.6g\n", r.bound_b, r.ratio_b);
  std::printf("soliton size l_{N/4}           %.6g\n", r.soliton_size_quarter);
  std::printf("soliton size l_{3N/4}          %.6g\n", r.soliton_size_three_quarter);
  std::printf("zero-point spread sqrt(8/3N)   %.6g\n", r.zero_point_rel_fluct);
  return kOk;
}

int cmd_units(const gfk_physical_params& params, std::optional<double> g_tilde, std::optional<double> omega_hz) {
  gfk_units_report r{};
  gfk_status s = GFK_OK;
  constexpr double kTwoPi = 6.283185307179586;
  if (g_tilde) {
    s = gfk_units_from_g_tilde(&params, *g_tilde, &r);
  } else {
    s = gfk_units_from_omega(&params, *omega_hz * kTwoPi, &r);
  }
  if (s != GFK_OK) return report(s, "units");
  std::printf("atomic mass                    %.6g u\n", params.atomic_mass_u);
  std::printf("scattering length              %.6g a0\n", params.scattering_length_a0);
  std::printf("radial trap frequency          %.6g Hz\n", params.radial_trap_hz);
  std::printf("coupling g                     %.6e J m\n", r.coupling_j_m);
  std::printf("g_tilde                        %.6g\n", r.g_tilde);
  std::printf("axial omega                    %.6e rad/s\n", r.axial_omega_rad_s);
  std::printf("axial frequency                %.6e Hz\n", r.axial_omega_rad_s / kTwoPi);
  std::printf("quarter period T/4             %.6e s\n", r.quarter_period_s);
  std::printf("radial oscillator length       %.6e m\n", r.radial_length_m);
  std::printf("collapse threshold N_c         %.6g\n", r.collapse_threshold);
  return kOk;
}

int cmd_validate(const ConfigOptions& cfg) {
  SpecHandle spec;
  if (auto s = cfg.build(spec); s != GFK_OK) return report(s, "config");
  const double g = std::stod(spec_value(spec.ptr, "g_tilde"));
  const double divisor = std::stod(spec_value(spec.ptr, "quench_divisor"));
  const double sigma = std::stod(spec_value(spec.ptr, "sigma_tilde"));
  const std::string mode = spec_value(spec.ptr, "coupling_mode");
  if (g == 0.0) {
    std::cout << "no interaction (g_tilde = 0): nothing to validate\n";
    return kOk;
  }
  bool sampled_ok = true;
  for (const auto& [name, g_eff] : {std::pair<std::string, double>{"pre_quench", g / divisor}, {"post_quench", g}}) {
    gfk_regularization_report r{};
    if (auto s = gfk_check_regularization(g_eff, sigma, &r); s != GFK_OK) return report(s, "validate");
    const bool sampled = name == mode;
    std::printf("%-11s%s g_eff=%.6g sigma=%.6g V0=%.6g alpha=%.6g wkb_count=%.6g E_bound=%.6g ok=%s\n",
                name.c_str(), sampled ? "*" : " ", r.g_eff, r.sigma_tilde, r.v0, r.alpha, r.wkb_count,
                r.bound_energy, r.ok ? "true" : "false");
    if (sampled && !r.ok) sampled_ok = false;
  }
  return sampled_ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Feynman-Kac path-integral Monte Carlo for attractive bosons in a 1D trap"};
  app.set_version_flag("--version", std::string(gfk_version()));
  app.require_subcommand(1);

  ConfigOptions run_cfg;
  bool run_force = false;
  bool run_quiet = false;
  auto* run = app.add_subcommand("run", "run one simulation and write its estimates");
  run_cfg.attach(run);
  run->add_flag("--force", run_force, "run even if the regularization check fails");
  run->add_flag("-q,--quiet", run_quiet, "no progress on stderr");

  ConfigOptions sweep_cfg;
  std::string rows_path;
  bool sweep_force = false;
  bool sweep_quiet = false;
  auto* sweep = app.add_subcommand("sweep", "run a (g_tilde, sigma_tilde) table; defaults to the reference rows");
  sweep_cfg.attach(sweep);
  sweep->add_option("--rows", rows_path, "CSV of g_tilde,sigma_tilde rows")->check(CLI::ExistingFile);
  sweep->add_flag("--force", sweep_force, "run rows even if their regularization check fails");
  sweep->add_flag("-q,--quiet", sweep_quiet, "no progress on stderr");

  double theory_g = 0.5;
  double theory_n = 100;
  auto* theory = app.add_subcommand("theory", "closed-form predictions and validity ratios");
  theory->add_option("--g_tilde,--g-tilde", theory_g, "dimensionless post-quench coupling")->required();
  theory->add_option("--N", theory_n, "number of atoms")->required();

  gfk_physical_params params{7.016, -16.2, 297.0};
  std::optional<double> units_g;
  std::optional<double> units_omega_hz;
  auto* units = app.add_subcommand("units", "convert between trap units and SI for a Li-7 setup");
  units->add_option("--mass-u", params.atomic_mass_u, "atomic mass in u")->capture_default_str();
  units->add_option("--a-sc", params.scattering_length_a0, "scattering length in Bohr radii")->capture_default_str();
  units->add_option("--radial-hz", params.radial_trap_hz, "radial trap frequency in Hz")->capture_default_str();
  auto* g_opt = units->add_option("--g_tilde,--g-tilde", units_g, "dimensionless coupling");
  auto* w_opt = units->add_option("--axial-hz", units_omega_hz, "axial trap frequency in Hz");
  g_opt->excludes(w_opt);
  units->require_option(1);

  ConfigOptions validate_cfg;
  auto* validate = app.add_subcommand("validate", "check the Gaussian regularization of the pair interaction");
  validate_cfg.attach(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*run) return cmd_run(run_cfg, run_force, run_quiet);
  if (*sweep) return cmd_sweep(sweep_cfg, rows_path, sweep_force, sweep_quiet);
  if (*theory) return cmd_theory(theory_g, theory_n);
  if (*units) return cmd_units(params, units_g, units_omega_hz);
  if (*validate) return cmd_validate(validate_cfg);
  return kInternal;
}
