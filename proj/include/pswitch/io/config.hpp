#pragma once
// Flat key = value run configuration, preset resolution, and round-trip
// emission. One file fully describes a solve/verify/simulate run.

#include <string>
#include <vector>

#include "pswitch/fd_solver.hpp"
#include "pswitch/model.hpp"
#include "pswitch/simulate.hpp"

namespace pswitch {

struct RunConfig {
  ModelSpec model;
  double x_min = 0.01;
  double x_max = 100.0;
  std::size_t n_nodes = 601;
  SolverOptions solver;
  PathConfig paths;
  double verify_tol = 2e-3;  // scaled FD-versus-oracle gate used by `verify`
  bool allow_integrability_override = false;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv"};  // subset of csv, json, svg
};

// Parses `key = value` lines. '#' starts a comment; blank lines are skipped.
// Unknown keys or unparsable values throw std::runtime_error naming the line.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Applies one `key=value` pair (same keys as the file format).
void apply_override(RunConfig& cfg, const std::string& assignment);

// Emits every key in a fixed order; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& cfg);

// Resolves a preset name to <dir>/<name>.cfg using PSWITCH_PRESET_DIR when
// set, falling back to ./presets. Throws std::runtime_error if absent.
std::string preset_path(const std::string& name);

}  // namespace pswitch
