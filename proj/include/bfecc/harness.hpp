#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bfecc/config.hpp"
#include "bfecc/diagnostics.hpp"
#include "bfecc/grid.hpp"
#include "bfecc/schemes.hpp"
#include "bfecc/solver.hpp"

namespace bfecc {

enum class ExperimentKind { periodic1d, periodic2d, scatter_cylinder, scatter_complex };
enum class GridVariant { uniform, perturbed, circular, shifted };

const char* to_string(ExperimentKind kind) noexcept;
const char* to_string(GridVariant variant) noexcept;
ExperimentKind parse_experiment_kind(const std::string& name);
/// Accepts a/b/c/d or uniform/perturbed/circular/shifted.
GridVariant parse_grid_variant(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::periodic1d;
  SchemeKind scheme = SchemeKind::cd;
  double theta = 0.5;
  bool bfecc = true;
  LsqMode lsq = LsqMode::cached;
  double lambda = 0.38;  // dt / h
  double final_time = 0.6;
  std::vector<int> sizes;
  GridVariant variant = GridVariant::uniform;
  int smoothing = 0;
  double eps_inside = 2.25;
  double mu_inside = 1.0;
  double pml_thickness = 0.25;
  double pml_sigma_max = 160.0;
  double pml_exponent = 3.0;
  Rect tfsf_rect{0.2, 0.2, 0.8, 0.8};
  double tfsf_omega = 0.0;
  double tfsf_amplitude = 1.0;
  double tfsf_ramp = 0.6;
  int reference_n = 160;
  NormKind norm = NormKind::rms;
  unsigned seed = 42;
  std::string output_dir;
  bool allow_unstable = false;
  bool snapshots = false;

  void validate() const;
};

/// Defaults depend on `experiment`; every key is checked against the schema.
ExperimentConfig experiment_from(const Config& config);
std::vector<std::string> config_keys();

/// Periodic unit-square grid of variant (a) uniform, (b) smooth sine
/// perturbation, (c) radial remap, (d) point-shifted onto the r = 0.24 circle.
Grid2 grid_variant(GridVariant variant, int n, int smoothing = 0);

/// The scatterer boundary of a scattering experiment.
Curve scatterer_curve(ExperimentKind kind);

/// Steps of size dt covering [0, t]: floor(t / dt) with a relative guard.
long step_count(double t, double dt);

/// Worker count from SOLVER_THREADS (unset or 0: hardware concurrency).
unsigned worker_count();

struct SizeResult {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  long steps = 0;
  NormBreakdown errors;
  double error = 0.0;  // errors.value(config.norm)
  double sup_norm = 0.0;
  int dims = 2;
};

struct ExperimentReport {
  std::vector<SizeResult> sizes;
  std::vector<double> orders;

  std::vector<ErrorRow> rows() const;
};

/// Everything a scattering run needs at one resolution.
struct ScatterSetup {
  std::shared_ptr<const Grid2> grid;
  std::shared_ptr<const Material> material;
  Rect interior{0.0, 0.0, 1.0, 1.0};
  std::vector<std::uint8_t> interior_mask;
  double dt = 0.0;
};

ScatterSetup scatter_setup(const ExperimentConfig& config, int n);
std::unique_ptr<MaxwellSolver2> make_scatter_solver(const ExperimentConfig& config,
                                                    const ScatterSetup& setup);

/// Checks dt against the stability bound unless unstable runs are allowed.
void check_time_step(const ExperimentConfig& config, int dims, double h, double dt);

/// Runs one resolution; periodic cases compare with the exact solution,
/// scattering cases only report the sup norm (errors left empty).
SizeResult run_single(const ExperimentConfig& config, int n);

/// Refinement sweep over config.sizes (plus the reference for scattering),
/// run concurrently. Writes CSVs when output_dir is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace bfecc
