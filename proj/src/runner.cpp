#include "gfk/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gfk/error.hpp"
#include "gfk/observables.hpp"
#include "gfk/random.hpp"
#include "gfk/reference_table.hpp"

#ifndef GFK_VERSION
#define GFK_VERSION "unknown"
#endif

namespace gfk {

std::string version_string() { return GFK_VERSION; }

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GFK_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0 || v > 4096)
      throw RangeError("GFK_THREADS must be a positive integer, got '" + std::string(env) + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<Observable> make_observables(const RunSpec& spec) {
  std::vector<Observable> out;
  for (const auto& name : spec.observables) {
    if (name == "pair_distance_sq") {
      const PairMode mode = spec.pair_mode;
      out.push_back({name, [mode](std::span<const double> x) { return pair_distance_sq(x, mode); }});
    } else if (name == "mean_x_sq") {
      out.push_back({name, [](std::span<const double> x) { return mean_x_sq(x); }});
    }
  }
  return out;
}

// Stream index reserved for the e0 pilot so it never collides with a trajectory.
constexpr std::uint64_t kPilotStreamIndex = ~std::uint64_t{0};

ModelConfig resolve_model(const RunSpec& spec) {
  ModelConfig model = spec.model;
  if (spec.e0_auto) {
    model.e0 = pilot_trial_energy(model, trajectory_seed(spec.sampler.master_seed, kPilotStreamIndex),
                                  spec.pilot_samples);
  }
  return model;
}

RunOutput run(const RunSpec& spec, const RunOptions& options) {
  validate(spec);
  const auto started = std::chrono::steady_clock::now();

  RunOutput out;
  out.spec = spec;
  const double g_eff = spec.model.effective_coupling();
  if (g_eff > 0.0) {
    out.regularization = regularization::check_regularization(g_eff, spec.model.sigma_tilde);
    if (!out.regularization->ok && !options.force) {
      std::ostringstream os;
      os << "regularization check failed for g_eff=" << g_eff << ", sigma_tilde=" << spec.model.sigma_tilde
         << " (WKB count " << out.regularization->count << "); rerun with --force to override";
      throw Error(ErrorCode::regularization_failed, os.str());
    }
  }

  const ModelConfig model = resolve_model(spec);
  out.e0_used = model.e0;

  const auto observables = make_observables(spec);
  std::optional<HistogramBins> bins;
  if (spec.wants_histogram()) bins = spec.histogram;

  const TrajectorySet set = generate_trajectories(model, spec.sampler, observables, spec.n_trajectories,
                                                  resolve_thread_count(spec.threads), options.progress, bins);

  const Window window = spec.measurement_window();
  const auto expectation = spec.expectation_options();
  for (std::size_t i = 0; i < observables.size(); ++i)
    out.observables.push_back(gfk_expectation(set, i, window, expectation));
  if (bins) out.histogram = weighted_pair_histogram(set, window, expectation);
  if (window_records(set, spec.fit_window()).size() >= 2)
    out.energy = ground_energy(set, spec.fit_window(), model.e0);

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

namespace {

// Keys echoed into result files. The worker count never changes a result, so
// it is left out to keep files identical across machines.
std::vector<std::string> recorded_keys() {
  std::vector<std::string> keys;
  for (const auto& key : config_keys())
    if (key != "threads") keys.push_back(key);
  return keys;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_row(std::ostream& os, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) os << ',';
    os << csv_field(f);
    first = false;
  }
  os << "\r\n";
}

const char* kRunColumns[] = {"schema_version", "kind", "name", "value", "std_error",
                             "effective_sample_size", "n_trajectories", "t_start", "t_end",
                             "weight_dispersion", "samples_per_trajectory", "bin_center", "mass"};

void csv_simple(std::ostream& os, const std::string& kind, const std::string& name, const std::string& value) {
  csv_row(os, {std::to_string(kOutputSchemaVersion), kind, name, value, "", "", "", "", "", "", "", "", ""});
}

void csv_estimate(std::ostream& os, const std::string& kind, const EstimatorResult& r) {
  csv_row(os, {std::to_string(kOutputSchemaVersion), kind, r.name, format_number(r.mean),
               format_number(r.std_error), format_number(r.effective_sample_size),
               std::to_string(r.n_trajectories), format_number(r.window.t_start), format_number(r.window.t_end),
               format_number(r.weight_dispersion), std::to_string(r.samples_per_trajectory), "", ""});
}

std::vector<std::pair<std::string, std::string>> meta_fields(const RunOutput& out) {
  std::vector<std::pair<std::string, std::string>> meta = {
      {"version", version_string()},
      {"master_seed", std::to_string(out.spec.sampler.master_seed)},
      {"e0_used", format_number(out.e0_used)},
      {"coupling_mode", std::string(to_string(out.spec.model.coupling_mode))},
      {"g_eff", format_number(out.spec.model.effective_coupling())},
  };
  if (out.regularization) {
    meta.emplace_back("regularization_ok", out.regularization->ok ? "true" : "false");
    meta.emplace_back("wkb_bound_count", format_number(out.regularization->count));
    meta.emplace_back("pair_bound_energy", format_number(out.regularization->bound_state.energy));
  }
  return meta;
}

nlohmann::ordered_json estimate_json(const EstimatorResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["value"] = r.mean;
  j["std_error"] = r.std_error;
  j["effective_sample_size"] = r.effective_sample_size;
  j["n_trajectories"] = r.n_trajectories;
  j["t_start"] = r.window.t_start;
  j["t_end"] = r.window.t_end;
  j["weight_dispersion"] = r.weight_dispersion;
  j["samples_per_trajectory"] = r.samples_per_trajectory;
  return j;
}

}  // namespace

void write_csv(const RunOutput& out, std::ostream& os) {
  std::ostringstream header;
  bool first = true;
  for (const char* c : kRunColumns) {
    header << (first ? "" : ",") << c;
    first = false;
  }
  os << header.str() << "\r\n";
  for (const auto& [k, v] : meta_fields(out)) csv_simple(os, "meta", k, v);
  for (const auto& key : recorded_keys()) csv_simple(os, "config", key, get_config_value(out.spec, key));
  for (const auto& r : out.observables) csv_estimate(os, "observable", r);
  if (out.energy) csv_estimate(os, "energy", *out.energy);
  if (out.histogram) {
    const auto centers = out.histogram->centers();
    for (std::size_t i = 0; i < centers.size(); ++i)
      csv_row(os, {std::to_string(kOutputSchemaVersion), "histogram", "pair_distance", "", "", "", "", "", "",
                   "", "", format_number(centers[i]), format_number(out.histogram->mass[i])});
  }
}

void write_json(const RunOutput& out, std::ostream& os) {
  nlohmann::ordered_json j;
  j["schema_version"] = kOutputSchemaVersion;
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : meta_fields(out)) meta[k] = v;
  j["meta"] = meta;
  nlohmann::ordered_json config;
  for (const auto& key : recorded_keys()) config[key] = get_config_value(out.spec, key);
  j["config"] = config;
  j["observables"] = nlohmann::ordered_json::array();
  for (const auto& r : out.observables) j["observables"].push_back(estimate_json(r));
  j["energy"] = out.energy ? estimate_json(*out.energy) : nlohmann::ordered_json(nullptr);
  j["histogram"] = nlohmann::ordered_json::array();
  if (out.histogram) {
    const auto centers = out.histogram->centers();
    for (std::size_t i = 0; i < centers.size(); ++i)
      j["histogram"].push_back({{"bin_center", centers[i]}, {"mass", out.histogram->mass[i]}});
  }
  os << j.dump(2) << "\n";
}

void write_output(const RunOutput& output, const std::string& path, OutputFormat format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::io, "cannot open output file '" + path + "'");
  if (format == OutputFormat::csv) write_csv(output, file); else write_json(output, file);
  if (!file) throw Error(ErrorCode::io, "failed writing output file '" + path + "'");
}

void write_output(const RunOutput& output) {
  write_output(output, output.spec.output_path, output.spec.output_format);
}

std::string summary_line(const RunOutput& out) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& r : out.observables) {
    os << (first ? "" : "; ") << r.name << " = " << r.mean << " +- " << r.std_error
       << " (ESS " << r.effective_sample_size << ", npi " << r.n_trajectories << ")";
    first = false;
  }
  if (out.energy) os << "; E0 = " << out.energy->mean << " +- " << out.energy->std_error;
  os << "; wall " << out.wall_seconds << " s";
  return os.str();
}

std::vector<SweepRow> reference_sweep_rows() {
  std::vector<SweepRow> rows;
  for (const auto& r : kReferenceRows) rows.push_back({r.g_tilde, r.sigma_tilde});
  return rows;
}

std::string error_code_name(int code) {
  switch (static_cast<ErrorCode>(code)) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse: return "parse_error";
    case ErrorCode::range: return "range_error";
    case ErrorCode::degenerate_weights: return "degenerate_weights";
    case ErrorCode::non_finite_walker: return "non_finite_walker";
    case ErrorCode::too_few_particles: return "too_few_particles";
    case ErrorCode::grid_not_converged: return "grid_not_converged";
    case ErrorCode::regularization_failed: return "regularization_failed";
    case ErrorCode::io: return "io_error";
    case ErrorCode::division_by_zero: return "division_by_zero";
  }
  return "internal_error";
}

std::vector<SweepRecord> table_sweep(std::span<const SweepRow> rows, const RunSpec& base,
                                     const RunOptions& options) {
  if (rows.empty()) throw RangeError("sweep needs at least one row");
  std::vector<SweepRecord> records;
  for (const auto& row : rows) {
    SweepRecord rec;
    rec.row = row;
    rec.coupling_mode = base.model.coupling_mode;
    const double n = base.model.n_particles;
    try {
      RunSpec spec = base;
      spec.model.g_tilde = row.g_tilde;
      spec.model.sigma_tilde = row.sigma_tilde;
      rec.theory = theory::pair_variance_prediction(row.g_tilde, n);
      if (row.g_tilde > 0.0) rec.validity = theory::validity_conditions(row.g_tilde, n);
      const double g_eff = spec.model.effective_coupling();
      if (g_eff > 0.0) {
        const auto reg = regularization::check_regularization(g_eff, row.sigma_tilde);
        rec.regularization_ok = reg.ok;
        rec.wkb_count = reg.count;
      } else {
        rec.regularization_ok = true;
      }
      RunOutput out = run(spec, options);
      for (const auto& r : out.observables)
        if (r.name == "pair_distance_sq") rec.estimate = r;
      rec.status = "ok";
    } catch (const Error& e) {
      rec.status = error_code_name(static_cast<int>(e.code()));
      rec.message = e.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& os) {
  os << "schema_version,g_tilde,sigma_tilde,coupling_mode,estimate,std_error,effective_sample_size,"
        "theory,ratio_a,ratio_b,regularization_ok,wkb_count,status,message\r\n";
  for (const auto& r : records) {
    const bool has = r.estimate.has_value();
    csv_row(os, {std::to_string(kOutputSchemaVersion), format_number(r.row.g_tilde),
                 format_number(r.row.sigma_tilde), std::string(to_string(r.coupling_mode)),
                 has ? format_number(r.estimate->mean) : "", has ? format_number(r.estimate->std_error) : "",
                 has ? format_number(r.estimate->effective_sample_size) : "", format_number(r.theory),
                 format_number(r.validity.ratio_a), format_number(r.validity.ratio_b),
                 r.regularization_ok ? "true" : "false", format_number(r.wkb_count), r.status, r.message});
  }
}

void write_sweep_json(std::span<const SweepRecord> records, std::ostream& os) {
  nlohmann::ordered_json j;
  j["schema_version"] = kOutputSchemaVersion;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["g_tilde"] = r.row.g_tilde;
    row["sigma_tilde"] = r.row.sigma_tilde;
    row["coupling_mode"] = std::string(to_string(r.coupling_mode));
    row["estimate"] = r.estimate ? nlohmann::ordered_json(r.estimate->mean) : nlohmann::ordered_json(nullptr);
    row["std_error"] = r.estimate ? nlohmann::ordered_json(r.estimate->std_error) : nlohmann::ordered_json(nullptr);
    row["effective_sample_size"] =
        r.estimate ? nlohmann::ordered_json(r.estimate->effective_sample_size) : nlohmann::ordered_json(nullptr);
    row["theory"] = r.theory;
    row["ratio_a"] = r.validity.ratio_a;
    row["ratio_b"] = r.validity.ratio_b;
    row["regularization_ok"] = r.regularization_ok;
    row["wkb_count"] = r.wkb_count;
    row["status"] = r.status;
    row["message"] = r.message;
    j["rows"].push_back(row);
  }
  os << j.dump(2) << "\n";
}

}  // namespace gfk
