// Batch driver for the BFECC solver library.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "bfecc/bfecc.h"

namespace {

int exit_code(int status) {
  if (status == BFECC_OK) return 0;
  std::fprintf(stderr, "error: %s: %s\n", bfecc_status_string(status), bfecc_last_error());
  if (status == BFECC_E_UNSTABLE) return 3;
  if (status == BFECC_E_INTERNAL) return 1;
  return 2;
}

int load(const std::string& path, bool allow_unstable, bfecc_experiment** exp) {
  int st = bfecc_experiment_from_file(path.c_str(), exp);
  if (st == BFECC_OK && allow_unstable) st = bfecc_experiment_set(*exp, "run.allow_unstable", "true");
  return st;
}

void print_table(const bfecc_experiment* exp) {
  std::printf("grid,n,h,dt,l2_error,order\n");
  for (size_t k = 0; k < bfecc_experiment_row_count(exp); ++k) {
    bfecc_error_row r;
    bfecc_experiment_row(exp, k, &r);
    if (r.dims == 1)
      std::printf("%d,", r.n);
    else
      std::printf("%dx%d,", r.n, r.n);
    std::printf("%d,%.6g,%.6g,%.6g,", r.n, r.h, r.dt, r.l2_error);
    if (r.has_order) std::printf("%.6g", r.order);
    std::printf("\n");
  }
}

int cmd_run(const std::string& path, bool allow_unstable) {
  bfecc_experiment* exp = nullptr;
  int st = load(path, allow_unstable, &exp);
  if (st == BFECC_OK) st = bfecc_experiment_run(exp);
  if (st == BFECC_OK) {
    bfecc_error_row r;
    bfecc_experiment_row(exp, 0, &r);
    std::printf("n=%d h=%.6g dt=%.6g steps=%ld sup_norm=%.6g", r.n, r.h, r.dt, r.steps, r.sup_norm);
    if (r.has_error) std::printf(" l2_error=%.6g", r.l2_error);
    std::printf("\n");
  }
  bfecc_experiment_destroy(exp);
  return exit_code(st);
}

int cmd_refine(const std::string& path, bool allow_unstable) {
  bfecc_experiment* exp = nullptr;
  int st = load(path, allow_unstable, &exp);
  if (st == BFECC_OK) st = bfecc_experiment_refine(exp);
  if (st == BFECC_OK) print_table(exp);
  bfecc_experiment_destroy(exp);
  return exit_code(st);
}

int cmd_analyze(const std::string& scheme, int dims, double lx, double ly, int samples,
                double theta) {
  bfecc_scan* scan = nullptr;
  const int st = bfecc_scan_run(scheme.c_str(), dims, lx, ly, samples, theta, &scan);
  if (st != BFECC_OK) return exit_code(st);
  std::printf("k_index,spectral_radius\n");
  for (size_t n = 0; n < bfecc_scan_count(scan); ++n) {
    int k = 0, l = 0;
    double r = 0.0;
    bfecc_scan_entry(scan, n, &k, &l, &r);
    if (dims == 1)
      std::printf("%d,%.17g\n", k, r);
    else
      std::printf("%d:%d,%.17g\n", k, l, r);
  }
  int k = 0, l = 0;
  double r = 0.0;
  bfecc_scan_max(scan, &k, &l, &r);
  if (dims == 1)
    std::printf("max_radius=%.17g at k=%d\n", r, k);
  else
    std::printf("max_radius=%.17g at k=%d:%d\n", r, k, l);
  bfecc_scan_destroy(scan);
  return 0;
}

int cmd_gridgen(const std::string& variant, int n, int smoothing, const std::string& out) {
  bfecc_grid* grid = nullptr;
  int st = bfecc_grid_variant(variant.c_str(), n, smoothing, &grid);
  if (st == BFECC_OK) st = bfecc_grid_write_csv(grid, out.c_str());
  bfecc_grid_destroy(grid);
  return exit_code(st);
}

int cmd_dispersion(double lambda, int samples) {
  if (samples < 1 || !(lambda > 0.0)) {
    std::fprintf(stderr, "error: need --lambda > 0 and --samples >= 1\n");
    return 2;
  }
  std::printf("k_h,phase_speed\n");
  for (int m = 1; m <= samples; ++m) {
    const double kh = std::numbers::pi * m / samples;
    double v = 0.0;
    if (bfecc_phase_speed(lambda, kh, &v) != BFECC_OK) v = std::nan("");
    std::printf("%.17g,%.17g\n", kh, v);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BFECC solver for the 1D and 2D TMz Maxwell equations"};
  app.require_subcommand(1);

  std::string config;
  bool allow_unstable = false;
  auto* run = app.add_subcommand("run", "Run one simulation at the finest configured size");
  run->add_option("--config", config, "Experiment config file")->required();
  run->add_flag("--allow-unstable", allow_unstable, "Skip the stability-bound check");

  auto* refine = app.add_subcommand("refine", "Grid refinement study with error table");
  refine->add_option("--config", config, "Experiment config file")->required();
  refine->add_flag("--allow-unstable", allow_unstable, "Skip the stability-bound check");

  std::string scheme = "cd";
  int dims = 1;
  double lx = 0.5, ly = 0.5, theta = 0.5;
  int samples = 256;
  auto* analyze = app.add_subcommand("analyze", "Spectral radius of the BFECC symbol over modes");
  analyze->add_option("--scheme", scheme, "cd | lf | theta | ls_cd | ls_theta");
  analyze->add_option("--dims", dims, "1 or 2")->check(CLI::Range(1, 2));
  analyze->add_option("--lambda-x", lx, "dt/dx");
  analyze->add_option("--lambda-y", ly, "dt/dy (2D)");
  analyze->add_option("--samples", samples, "modes per axis (>= 64)");
  analyze->add_option("--theta", theta, "theta for the theta scheme");

  std::string variant = "a", out;
  int n = 20, smoothing = 0;
  auto* gridgen = app.add_subcommand("gridgen", "Write a grid variant as CSV");
  gridgen->add_option("--variant", variant, "a | b | c | d");
  gridgen->add_option("--n", n, "points per axis");
  gridgen->add_option("--smoothing", smoothing, "smoothing iterations for variant d");
  gridgen->add_option("--out", out, "output CSV path")->required();

  double lambda = 0.5;
  int dsamples = 200;
  auto* dispersion = app.add_subcommand("dispersion", "Phase speed of 1D BFECC-cd versus kh");
  dispersion->add_option("--lambda", lambda, "dt/dx");
  dispersion->add_option("--samples", dsamples, "number of kh values in (0, pi]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) return cmd_run(config, allow_unstable);
  if (*refine) return cmd_refine(config, allow_unstable);
  if (*analyze) return cmd_analyze(scheme, dims, lx, ly, samples, theta);
  if (*gridgen) return cmd_gridgen(variant, n, smoothing, out);
  if (*dispersion) return cmd_dispersion(lambda, dsamples);
  return 2;
}
