#include "gfk/gfk.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "gfk/error.hpp"
#include "gfk/reference_table.hpp"
#include "gfk/regularization.hpp"
#include "gfk/runner.hpp"
#include "gfk/theory.hpp"
#include "gfk/units.hpp"

struct gfk_spec {
  gfk::RunSpec spec;
};

struct gfk_result {
  gfk::RunOutput output;
};

namespace {

thread_local std::string last_error;

gfk_status fail(gfk_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
gfk_status guarded(F&& body) {
  try {
    return body();
  } catch (const gfk::Error& e) {
    return fail(static_cast<gfk_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GFK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GFK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GFK_ERR_INTERNAL, "unknown error");
  }
}

gfk_status copy_out(const std::string& text, char* buf, size_t len, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || len < text.size() + 1) {
    if (buf && len > 0) buf[0] = '\0';
    return fail(GFK_ERR_BUFFER_TOO_SMALL, "buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return GFK_OK;
}

void fill(const gfk::EstimatorResult& r, gfk_estimate* out) {
  out->name = r.name.c_str();
  out->mean = r.mean;
  out->std_error = r.std_error;
  out->n_trajectories = r.n_trajectories;
  out->effective_sample_size = r.effective_sample_size;
  out->t_start = r.window.t_start;
  out->t_end = r.window.t_end;
  out->weight_dispersion = r.weight_dispersion;
  out->samples_per_trajectory = r.samples_per_trajectory;
}

gfk::RunOptions run_options(int force, gfk_progress_fn progress, void* user) {
  gfk::RunOptions options;
  options.force = force != 0;
  if (progress) options.progress = [progress, user](std::size_t done, std::size_t total) { progress(done, total, user); };
  return options;
}

#define GFK_REQUIRE(cond, what) \
  if (!(cond)) return fail(GFK_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* gfk_version(void) {
  static const std::string version = gfk::version_string();
  return version.c_str();
}

const char* gfk_last_error(void) { return last_error.c_str(); }

const char* gfk_status_name(gfk_status status) {
  switch (status) {
    case GFK_OK: return "ok";
    case GFK_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case GFK_ERR_NOT_AVAILABLE: return "not_available";
    case GFK_ERR_INTERNAL: return "internal_error";
    default: break;
  }
  static thread_local std::string name;
  name = gfk::error_code_name(static_cast<int>(status));
  return name.c_str();
}

gfk_status gfk_spec_create(gfk_spec** out) {
  GFK_REQUIRE(out, "out is NULL");
  return guarded([&] {
    *out = new gfk_spec{};
    return GFK_OK;
  });
}

gfk_status gfk_spec_parse(const char* text, gfk_spec** out) {
  GFK_REQUIRE(text && out, "text or out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto spec = gfk::parse_config(text);
    *out = new gfk_spec{std::move(spec)};
    return GFK_OK;
  });
}

gfk_status gfk_spec_update(gfk_spec* spec, const char* text) {
  GFK_REQUIRE(spec && text, "spec or text is NULL");
  return guarded([&] {
    spec->spec = gfk::parse_config(text, spec->spec);
    return GFK_OK;
  });
}

gfk_status gfk_spec_set(gfk_spec* spec, const char* key, const char* value) {
  GFK_REQUIRE(spec && key && value, "spec, key or value is NULL");
  return guarded([&] {
    gfk::RunSpec updated = spec->spec;
    gfk::set_config_value(updated, key, value);
    spec->spec = std::move(updated);
    return GFK_OK;
  });
}

gfk_status gfk_spec_get(const gfk_spec* spec, const char* key, char* buf, size_t len, size_t* needed) {
  GFK_REQUIRE(spec && key, "spec or key is NULL");
  return guarded([&] { return copy_out(gfk::get_config_value(spec->spec, key), buf, len, needed); });
}

gfk_status gfk_spec_validate(const gfk_spec* spec) {
  GFK_REQUIRE(spec, "spec is NULL");
  return guarded([&] {
    gfk::validate(spec->spec);
    return GFK_OK;
  });
}

gfk_status gfk_spec_echo(const gfk_spec* spec, char* buf, size_t len, size_t* needed) {
  GFK_REQUIRE(spec, "spec is NULL");
  return guarded([&] { return copy_out(gfk::echo_config(spec->spec), buf, len, needed); });
}

size_t gfk_config_key_count(void) { return gfk::config_keys().size(); }

const char* gfk_config_key(size_t index) {
  const auto& keys = gfk::config_keys();
  return index < keys.size() ? keys[index].c_str() : nullptr;
}

void gfk_spec_destroy(gfk_spec* spec) { delete spec; }

gfk_status gfk_run(const gfk_spec* spec, int force, gfk_progress_fn progress, void* user, gfk_result** out) {
  GFK_REQUIRE(spec && out, "spec or out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto output = gfk::run(spec->spec, run_options(force, progress, user));
    *out = new gfk_result{std::move(output)};
    return GFK_OK;
  });
}

size_t gfk_result_observable_count(const gfk_result* result) {
  return result ? result->output.observables.size() : 0;
}

gfk_status gfk_result_observable(const gfk_result* result, size_t index, gfk_estimate* out) {
  GFK_REQUIRE(result && out, "result or out is NULL");
  if (index >= result->output.observables.size()) return fail(GFK_ERR_RANGE, "observable index out of range");
  fill(result->output.observables[index], out);
  return GFK_OK;
}

gfk_status gfk_result_energy(const gfk_result* result, gfk_estimate* out) {
  GFK_REQUIRE(result && out, "result or out is NULL");
  if (!result->output.energy) return fail(GFK_ERR_NOT_AVAILABLE, "fit window spans fewer than two records");
  fill(*result->output.energy, out);
  return GFK_OK;
}

double gfk_result_e0(const gfk_result* result) { return result ? result->output.e0_used : 0.0; }

double gfk_result_wall_seconds(const gfk_result* result) { return result ? result->output.wall_seconds : 0.0; }

gfk_status gfk_result_write(const gfk_result* result, const char* path, gfk_format format) {
  GFK_REQUIRE(result && path, "result or path is NULL");
  return guarded([&] {
    gfk::write_output(result->output, path,
                      format == GFK_FORMAT_JSON ? gfk::OutputFormat::json : gfk::OutputFormat::csv);
    return GFK_OK;
  });
}

gfk_status gfk_result_summary(const gfk_result* result, char* buf, size_t len, size_t* needed) {
  GFK_REQUIRE(result, "result is NULL");
  return guarded([&] { return copy_out(gfk::summary_line(result->output), buf, len, needed); });
}

void gfk_result_destroy(gfk_result* result) { delete result; }

gfk_status gfk_sweep(const gfk_spec* base, const gfk_sweep_row* rows, size_t n_rows, int force,
                     gfk_progress_fn progress, void* user, const char* path, gfk_format format,
                     size_t* failed_rows) {
  GFK_REQUIRE(base && rows && path, "base, rows or path is NULL");
  return guarded([&] {
    std::vector<gfk::SweepRow> sweep_rows;
    for (size_t i = 0; i < n_rows; ++i) sweep_rows.push_back({rows[i].g_tilde, rows[i].sigma_tilde});
    const auto records = gfk::table_sweep(sweep_rows, base->spec, run_options(force, progress, user));
    std::ofstream file(path, std::ios::binary);
    if (!file) throw gfk::Error(gfk::ErrorCode::io, std::string("cannot open output file '") + path + "'");
    if (format == GFK_FORMAT_JSON) gfk::write_sweep_json(records, file); else gfk::write_sweep_csv(records, file);
    if (!file) throw gfk::Error(gfk::ErrorCode::io, std::string("failed writing '") + path + "'");
    if (failed_rows) {
      *failed_rows = 0;
      for (const auto& r : records)
        if (r.status != "ok") ++*failed_rows;
    }
    return GFK_OK;
  });
}

size_t gfk_reference_row_count(void) { return gfk::kReferenceRows.size(); }

gfk_status gfk_reference_row(size_t index, gfk_sweep_row* out) {
  GFK_REQUIRE(out, "out is NULL");
  if (index >= gfk::kReferenceRows.size()) return fail(GFK_ERR_RANGE, "reference row index out of range");
  out->g_tilde = gfk::kReferenceRows[index].g_tilde;
  out->sigma_tilde = gfk::kReferenceRows[index].sigma_tilde;
  return GFK_OK;
}

gfk_status gfk_theory(double g_tilde, double n_particles, gfk_theory_report* out) {
  GFK_REQUIRE(out, "out is NULL");
  return guarded([&] {
    namespace th = gfk::theory;
    out->vrel_variance = th::vrel_variance(g_tilde, n_particles);
    out->pair_variance = th::pair_variance_prediction(g_tilde, n_particles);
    out->quarter_period_xrel_variance = th::quarter_period_map(out->vrel_variance);
    const auto v = th::validity_conditions(g_tilde, n_particles);
    out->validity_lhs = v.lhs;
    out->bound_a = v.bound_a;
    out->bound_b = v.bound_b;
    out->ratio_a = v.ratio_a;
    out->ratio_b = v.ratio_b;
    out->soliton_size_quarter = th::soliton_size(n_particles / 4.0, g_tilde);
    out->soliton_size_three_quarter = th::soliton_size(3.0 * n_particles / 4.0, g_tilde);
    out->zero_point_rel_fluct = th::zero_point_rel_fluct(n_particles);
    return GFK_OK;
  });
}

namespace {
gfk::units::PhysicalParams to_params(const gfk_physical_params* p) {
  gfk::units::PhysicalParams params;
  params.atomic_mass_u = p->atomic_mass_u;
  params.scattering_length_a0 = p->scattering_length_a0;
  params.radial_trap_hz = p->radial_trap_hz;
  return params;
}

void fill_units(const gfk::units::PhysicalParams& params, double g_tilde, double omega, gfk_units_report* out) {
  namespace u = gfk::units;
  out->coupling_j_m = u::coupling_si(params);
  out->g_tilde = g_tilde;
  out->axial_omega_rad_s = omega;
  out->quarter_period_s = u::quarter_period_seconds(omega);
  out->radial_length_m = u::radial_oscillator_length(params);
  out->collapse_threshold = u::collapse_threshold(out->radial_length_m, params.scattering_length_m());
}
}  // namespace

gfk_status gfk_units_from_g_tilde(const gfk_physical_params* p, double g_tilde, gfk_units_report* out) {
  GFK_REQUIRE(p && out, "params or out is NULL");
  return guarded([&] {
    const auto params = to_params(p);
    const double omega = gfk::units::axial_omega(gfk::units::coupling_si(params), params.mass_kg(), g_tilde);
    fill_units(params, g_tilde, omega, out);
    return GFK_OK;
  });
}

gfk_status gfk_units_from_omega(const gfk_physical_params* p, double omega, gfk_units_report* out) {
  GFK_REQUIRE(p && out, "params or out is NULL");
  return guarded([&] {
    const auto params = to_params(p);
    const double g = gfk::units::g_tilde_from_omega(gfk::units::coupling_si(params), params.mass_kg(), omega);
    fill_units(params, g, omega, out);
    return GFK_OK;
  });
}

gfk_status gfk_check_regularization(double g_eff, double sigma_tilde, gfk_regularization_report* out) {
  GFK_REQUIRE(out, "out is NULL");
  return guarded([&] {
    const auto r = gfk::regularization::check_regularization(g_eff, sigma_tilde);
    out->g_eff = r.g_eff;
    out->sigma_tilde = r.sigma;
    out->v0 = r.v0;
    out->alpha = r.alpha;
    out->wkb_count = r.count;
    out->bound = r.bound_state.bound;
    out->bound_energy = r.bound_state.energy;
    out->bound_mean_r_sq = r.bound_state.mean_r_sq;
    out->single_bound_state = r.single_bound_state;
    out->shallower_than_well = r.shallower_than_well;
    out->ok = r.ok;
    return GFK_OK;
  });
}

gfk_status gfk_wkb_bound_count(double v0, double alpha, double* out) {
  GFK_REQUIRE(out, "out is NULL");
  return guarded([&] {
    *out = gfk::regularization::wkb_bound_count(v0, alpha);
    return GFK_OK;
  });
}

}  // extern "C"
