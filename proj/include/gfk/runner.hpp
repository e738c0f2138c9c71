#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfk/estimator.hpp"
#include "gfk/regularization.hpp"
#include "gfk/run_spec.hpp"
#include "gfk/theory.hpp"

namespace gfk {

inline constexpr int kOutputSchemaVersion = 1;

std::string version_string();

// 0 resolves to GFK_THREADS when set, else the hardware concurrency.
unsigned resolve_thread_count(unsigned requested);

struct RunOptions {
  bool force = false;  // run even when the regularization check fails
  ProgressFn progress;
};

struct RunOutput {
  RunSpec spec;
  double e0_used = 0.0;
  std::optional<regularization::Report> regularization;  // absent without interaction
  std::vector<EstimatorResult> observables;
  std::optional<EstimatorResult> energy;
  std::optional<Histogram> histogram;
  double wall_seconds = 0.0;  // not written to files
};

std::vector<Observable> make_observables(const RunSpec& spec);

// Resolves e0 (pilot run when e0=auto) and returns the model actually sampled.
ModelConfig resolve_model(const RunSpec& spec);

RunOutput run(const RunSpec& spec, const RunOptions& options = {});

void write_csv(const RunOutput& output, std::ostream& os);
void write_json(const RunOutput& output, std::ostream& os);
// Writes to spec.output_path in spec.output_format; throws Error(io) on failure.
void write_output(const RunOutput& output);
void write_output(const RunOutput& output, const std::string& path, OutputFormat format);

std::string summary_line(const RunOutput& output);

struct SweepRow {
  double g_tilde = 0.0;
  double sigma_tilde = 0.0;
};

std::vector<SweepRow> reference_sweep_rows();

struct SweepRecord {
  SweepRow row;
  CouplingMode coupling_mode = CouplingMode::pre_quench;
  std::optional<EstimatorResult> estimate;
  double theory = 0.0;
  theory::ValidityReport validity;
  bool regularization_ok = false;
  double wkb_count = 0.0;
  std::string status;  // "ok" or the error code name
  std::string message;
};

// One run per row on top of `base`; per-row failures are recorded and the
// sweep continues.
std::vector<SweepRecord> table_sweep(std::span<const SweepRow> rows, const RunSpec& base,
                                     const RunOptions& options = {});

void write_sweep_csv(std::span<const SweepRecord> records, std::ostream& os);
void write_sweep_json(std::span<const SweepRecord> records, std::ostream& os);

std::string error_code_name(int code);

}  // namespace gfk
