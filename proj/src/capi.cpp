#include "bfecc/bfecc.h"

#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "bfecc/analysis.hpp"
#include "bfecc/error.hpp"
#include "bfecc/harness.hpp"

using namespace bfecc;

struct bfecc_experiment {
  Config config;
  ExperimentConfig parsed;
  std::vector<bfecc_error_row> rows;
};

struct bfecc_scan {
  ScanResult result;
};

struct bfecc_grid {
  Grid2 grid;
};

namespace {

thread_local std::string last_error;

int status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return BFECC_E_INVALID_ARGUMENT;
    case Errc::rank_deficient: return BFECC_E_RANK_DEFICIENT;
    case Errc::scheme_mismatch: return BFECC_E_SCHEME_MISMATCH;
    case Errc::missing_boundary: return BFECC_E_MISSING_BOUNDARY;
    case Errc::domain_error: return BFECC_E_DOMAIN;
    case Errc::unstable: return BFECC_E_UNSTABLE;
    case Errc::io: return BFECC_E_IO;
  }
  return BFECC_E_INTERNAL;
}

template <class F>
int guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return BFECC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BFECC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BFECC_E_INTERNAL;
  }
}

int null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return BFECC_E_INVALID_ARGUMENT;
}

bfecc_error_row to_row(const SizeResult& s, bool has_error) {
  bfecc_error_row r{};
  r.n = s.n;
  r.h = s.h;
  r.dt = s.dt;
  r.steps = s.steps;
  r.l2_error = s.error;
  r.has_error = has_error ? 1 : 0;
  r.sup_norm = s.sup_norm;
  r.dims = s.dims;
  return r;
}

}  // namespace

extern "C" {

const char* bfecc_last_error(void) { return last_error.c_str(); }

const char* bfecc_status_string(int status) {
  switch (status) {
    case BFECC_OK: return "ok";
    case BFECC_E_INVALID_ARGUMENT: return "invalid argument";
    case BFECC_E_RANK_DEFICIENT: return "rank-deficient stencil";
    case BFECC_E_SCHEME_MISMATCH: return "scheme/grid mismatch";
    case BFECC_E_MISSING_BOUNDARY: return "missing boundary treatment";
    case BFECC_E_DOMAIN: return "domain error";
    case BFECC_E_UNSTABLE: return "instability detected";
    case BFECC_E_IO: return "i/o error";
    default: return "internal error";
  }
}

int bfecc_experiment_from_file(const char* path, bfecc_experiment** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<bfecc_experiment>();
    exp->config = Config::load(path);
    exp->parsed = experiment_from(exp->config);
    *out = exp.release();
  });
}

int bfecc_experiment_from_string(const char* text, bfecc_experiment** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<bfecc_experiment>();
    exp->config = Config::parse_string(text);
    exp->parsed = experiment_from(exp->config);
    *out = exp.release();
  });
}

int bfecc_experiment_set(bfecc_experiment* exp, const char* key, const char* value) {
  if (!exp) return null_arg("exp");
  if (!key || !value) return null_arg("key/value");
  return guarded([&] {
    Config updated = exp->config;
    updated.set(key, value);
    exp->parsed = experiment_from(updated);
    exp->config = std::move(updated);
  });
}

int bfecc_experiment_run(bfecc_experiment* exp) {
  if (!exp) return null_arg("exp");
  return guarded([&] {
    exp->rows.clear();
    const SizeResult s = run_single(exp->parsed, exp->parsed.sizes.back());
    const bool has_error = exp->parsed.experiment == ExperimentKind::periodic1d ||
                           exp->parsed.experiment == ExperimentKind::periodic2d;
    exp->rows.push_back(to_row(s, has_error));
  });
}

int bfecc_experiment_refine(bfecc_experiment* exp) {
  if (!exp) return null_arg("exp");
  return guarded([&] {
    exp->rows.clear();
    const ExperimentReport report = run_experiment(exp->parsed);
    for (std::size_t k = 0; k < report.sizes.size(); ++k) {
      bfecc_error_row r = to_row(report.sizes[k], true);
      if (k > 0 && k - 1 < report.orders.size()) {
        r.order = report.orders[k - 1];
        r.has_order = 1;
      }
      exp->rows.push_back(r);
    }
  });
}

size_t bfecc_experiment_row_count(const bfecc_experiment* exp) { return exp ? exp->rows.size() : 0; }

int bfecc_experiment_row(const bfecc_experiment* exp, size_t index, bfecc_error_row* out) {
  if (!exp) return null_arg("exp");
  if (!out) return null_arg("out");
  if (index >= exp->rows.size()) {
    last_error = "row index out of range";
    return BFECC_E_INVALID_ARGUMENT;
  }
  *out = exp->rows[index];
  return BFECC_OK;
}

void bfecc_experiment_destroy(bfecc_experiment* exp) { delete exp; }

int bfecc_scan_run(const char* scheme, int dims, double lambda_x, double lambda_y, int samples,
                   double theta, bfecc_scan** out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto scan = std::make_unique<bfecc_scan>();
    scan->result = stability_scan(parse_scheme_kind(scheme), dims, {lambda_x, lambda_y}, samples,
                                  theta);
    *out = scan.release();
  });
}

size_t bfecc_scan_count(const bfecc_scan* scan) { return scan ? scan->result.entries.size() : 0; }

int bfecc_scan_entry(const bfecc_scan* scan, size_t index, int* k, int* l, double* radius) {
  if (!scan) return null_arg("scan");
  if (index >= scan->result.entries.size()) {
    last_error = "scan index out of range";
    return BFECC_E_INVALID_ARGUMENT;
  }
  const ScanEntry& e = scan->result.entries[index];
  if (k) *k = e.k;
  if (l) *l = e.l;
  if (radius) *radius = e.radius;
  return BFECC_OK;
}

int bfecc_scan_max(const bfecc_scan* scan, int* k, int* l, double* radius) {
  if (!scan) return null_arg("scan");
  if (k) *k = scan->result.k_max;
  if (l) *l = scan->result.l_max;
  if (radius) *radius = scan->result.max_radius;
  return BFECC_OK;
}

void bfecc_scan_destroy(bfecc_scan* scan) { delete scan; }

int bfecc_cfl_bound(const char* scheme, int dims, const double* spacings, double theta,
                    double* out) {
  if (!scheme) return null_arg("scheme");
  if (!spacings) return null_arg("spacings");
  if (!out) return null_arg("out");
  return guarded([&] {
    require(dims >= 1 && dims <= 3, "dims must be 1, 2 or 3");
    *out = cfl_bound(parse_scheme_kind(scheme), std::vector<double>(spacings, spacings + dims),
                     theta);
  });
}

int bfecc_phase_speed(double lambda, double kh, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = phase_speed(lambda, kh); });
}

int bfecc_grid_variant(const char* variant, int n, int smoothing, bfecc_grid** out) {
  if (!variant) return null_arg("variant");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto g = std::make_unique<bfecc_grid>();
    g->grid = grid_variant(parse_grid_variant(variant), n, smoothing);
    *out = g.release();
  });
}

int bfecc_grid_size(const bfecc_grid* grid, int* nx, int* ny) {
  if (!grid) return null_arg("grid");
  if (nx) *nx = grid->grid.nx();
  if (ny) *ny = grid->grid.ny();
  return BFECC_OK;
}

int bfecc_grid_point(const bfecc_grid* grid, int i, int j, double* x, double* y, int* shifted) {
  if (!grid) return null_arg("grid");
  if (i < 0 || j < 0 || i >= grid->grid.nx() || j >= grid->grid.ny()) {
    last_error = "grid index out of range";
    return BFECC_E_INVALID_ARGUMENT;
  }
  const Point2 p = grid->grid.point(i, j);
  if (x) *x = p.x;
  if (y) *y = p.y;
  if (shifted) *shifted = grid->grid.shifted(i, j) ? 1 : 0;
  return BFECC_OK;
}

int bfecc_grid_write_csv(const bfecc_grid* grid, const char* path) {
  if (!grid) return null_arg("grid");
  if (!path) return null_arg("path");
  return guarded([&] {
    std::ofstream os(path);
    if (!os) fail(Errc::io, std::string("cannot write '") + path + "'");
    write_grid_csv(os, grid->grid);
    if (!os) fail(Errc::io, std::string("write failed for '") + path + "'");
  });
}

void bfecc_grid_destroy(bfecc_grid* grid) { delete grid; }

}  // extern "C"
