#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conelab/cone_model.hpp"
#include "conelab/functionals.hpp"

namespace conelab {

struct MeshConfig {
  int points = 512;
  double grading = 0.98;
};

struct SweepConfig {
  std::vector<double> a;  // round-sphere radii
  std::vector<int> m;     // mesh sizes
};

struct CrossSectionConfig {
  bool round_sphere = false;
  double a = 1.0;  // round-sphere radius
  double r_h0 = 0.0;
  double volume = 0.0;
  std::vector<double> eigenvalues;  // spectrum form
};

// Experiment description parsed from a JSON config file.  Unknown keys are
// rejected at every level; physics fields have no silent defaults.
struct ExperimentConfig {
  int n = 0;
  CrossSectionConfig cross_section;
  double outer_radius = 0.0;
  OuterBc outer_bc = OuterBc::neumann;
  Warp warp;
  MeshConfig mesh;
  std::vector<double> taus{1.0};
  SolverParams solver;
  std::optional<SweepConfig> sweep;
  std::string output_dir = "out";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Model for the configured cross section (ignores any sweep grid).
ConeModel make_model(const ExperimentConfig& config);
// Same with the round-sphere radius replaced by a sweep value.
ConeModel make_model_with_a(const ExperimentConfig& config, double a);

// Canonical echo with defaults materialized, in fixed key order; the hash is
// FNV-1a 64 over its dump.
nlohmann::ordered_json canonical_config(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

}  // namespace conelab
