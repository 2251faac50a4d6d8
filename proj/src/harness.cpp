#include "bfecc/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <thread>

#include "bfecc/analysis.hpp"
#include "bfecc/bfecc_step.hpp"
#include "bfecc/error.hpp"
#include "bfecc/pml.hpp"

namespace bfecc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBlowUp = 1e6;
constexpr long kCheckEvery = 16;

void check_growth(double sup, long step) {
  if (!(sup <= kBlowUp))
    fail(Errc::unstable, "instability detected: sup norm " + std::to_string(sup) + " after " +
                             std::to_string(step) + " steps");
}

void run_parallel(std::vector<std::function<void()>>& tasks) {
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(tasks.size()));
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        tasks[k]();
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::periodic1d: return "periodic1d";
    case ExperimentKind::periodic2d: return "periodic2d";
    case ExperimentKind::scatter_cylinder: return "scatter_cylinder";
    case ExperimentKind::scatter_complex: return "scatter_complex";
  }
  return "?";
}

const char* to_string(GridVariant variant) noexcept {
  switch (variant) {
    case GridVariant::uniform: return "uniform";
    case GridVariant::perturbed: return "perturbed";
    case GridVariant::circular: return "circular";
    case GridVariant::shifted: return "shifted";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::periodic1d, ExperimentKind::periodic2d,
                           ExperimentKind::scatter_cylinder, ExperimentKind::scatter_complex})
    if (name == to_string(k)) return k;
  fail(Errc::invalid_argument, "unknown experiment '" + name + "'");
}

GridVariant parse_grid_variant(const std::string& name) {
  if (name == "a" || name == "uniform") return GridVariant::uniform;
  if (name == "b" || name == "perturbed") return GridVariant::perturbed;
  if (name == "c" || name == "circular") return GridVariant::circular;
  if (name == "d" || name == "shifted") return GridVariant::shifted;
  fail(Errc::invalid_argument, "unknown grid variant '" + name + "'");
}

std::vector<std::string> config_keys() {
  return {"experiment",     "scheme.kind",     "scheme.theta",     "bfecc",
          "lsq.cache",      "time.lambda",     "time.final",       "grid.sizes",
          "grid.variant",   "grid.smoothing",  "material.eps",     "material.mu",
          "pml.thickness",  "pml.sigma_max",   "pml.exponent",     "tfsf.rect",
          "tfsf.omega",     "tfsf.amplitude",  "tfsf.ramp",        "reference.n",
          "norm",           "seed",            "output.dir",       "output.snapshots",
          "run.allow_unstable"};
}

ExperimentConfig experiment_from(const Config& config) {
  config.check_keys(config_keys());
  if (!config.has("experiment")) fail(Errc::invalid_argument, "config needs an 'experiment' key");
  ExperimentConfig c;
  c.experiment = parse_experiment_kind(config.get_string("experiment", ""));

  switch (c.experiment) {
    case ExperimentKind::periodic1d:
      c.scheme = SchemeKind::cd;
      c.lambda = 0.38;
      c.final_time = 0.6;
      c.sizes = {64, 128, 256, 512, 1024, 2048};
      break;
    case ExperimentKind::periodic2d:
      c.scheme = SchemeKind::ls_theta;
      c.lambda = 0.25;
      c.final_time = 2.5;
      c.sizes = {20, 40, 80};
      break;
    case ExperimentKind::scatter_cylinder:
    case ExperimentKind::scatter_complex:
      c.scheme = SchemeKind::ls_theta;
      c.lambda = 1.0;
      c.final_time = c.experiment == ExperimentKind::scatter_cylinder ? 3.8 : 3.6;
      c.sizes = {20, 40, 80};
      c.variant = GridVariant::shifted;
      break;
  }
  c.tfsf_omega = 2.0 * kPi / 0.6;

  c.scheme = parse_scheme_kind(config.get_string("scheme.kind", to_string(c.scheme)));
  c.theta = config.get_double("scheme.theta", c.theta);
  c.bfecc = config.get_bool("bfecc", c.bfecc);
  c.lsq = config.get_bool("lsq.cache", true) ? LsqMode::cached : LsqMode::recompute;
  c.lambda = config.get_double("time.lambda", c.lambda);
  c.final_time = config.get_double("time.final", c.final_time);
  c.sizes = config.get_ints("grid.sizes", c.sizes);
  c.variant = parse_grid_variant(config.get_string("grid.variant", to_string(c.variant)));
  c.smoothing = config.get_int("grid.smoothing", c.smoothing);
  c.eps_inside = config.get_double("material.eps", c.eps_inside);
  c.mu_inside = config.get_double("material.mu", c.mu_inside);
  c.pml_thickness = config.get_double("pml.thickness", c.pml_thickness);
  c.pml_sigma_max = config.get_double("pml.sigma_max", c.pml_sigma_max);
  c.pml_exponent = config.get_double("pml.exponent", c.pml_exponent);
  if (config.has("tfsf.rect")) {
    const auto r = config.get_doubles("tfsf.rect", {});
    require(r.size() == 4, "tfsf.rect needs x0,y0,x1,y1");
    c.tfsf_rect = {r[0], r[1], r[2], r[3]};
  }
  c.tfsf_omega = config.get_double("tfsf.omega", c.tfsf_omega);
  c.tfsf_amplitude = config.get_double("tfsf.amplitude", c.tfsf_amplitude);
  c.tfsf_ramp = config.get_double("tfsf.ramp", c.tfsf_ramp);
  c.reference_n = config.get_int("reference.n", c.reference_n);
  c.norm = parse_norm_kind(config.get_string("norm", to_string(c.norm)));
  c.seed = static_cast<unsigned>(config.get_int("seed", static_cast<int>(c.seed)));
  c.output_dir = config.get_string("output.dir", c.output_dir);
  c.snapshots = config.get_bool("output.snapshots", c.snapshots);
  c.allow_unstable = config.get_bool("run.allow_unstable", c.allow_unstable);
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  require(!sizes.empty(), "grid.sizes must not be empty");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    require(sizes[k] >= 4, "grid sizes must be at least 4");
    if (k > 0) require(sizes[k] == 2 * sizes[k - 1], "grid sizes must be dyadic");
  }
  require(final_time > 0.0, "time.final must be positive");
  require(lambda > 0.0, "time.lambda must be positive");
  require(theta >= 0.0 && theta <= 1.0, "scheme.theta must lie in [0, 1]");
  require(smoothing >= 0, "grid.smoothing must be non-negative");
  const bool scatter = experiment == ExperimentKind::scatter_cylinder ||
                       experiment == ExperimentKind::scatter_complex;
  if (experiment == ExperimentKind::periodic1d)
    require(scheme == SchemeKind::cd || scheme == SchemeKind::lf || scheme == SchemeKind::theta,
            "periodic1d supports the cd, lf and theta schemes");
  if (scatter) {
    require(variant == GridVariant::uniform || variant == GridVariant::shifted,
            "scattering runs use the uniform or shifted grid variant");
    require(eps_inside > 0.0 && mu_inside > 0.0, "material parameters must be positive");
    require(pml_thickness > 0.0 && pml_sigma_max >= 0.0 && pml_exponent >= 1.0,
            "invalid PML parameters");
    require(reference_n > sizes.back() && reference_n % sizes.back() == 0,
            "reference.n must be a multiple of the finest grid size");
  }
}

Grid2 grid_variant(GridVariant variant, int n, int smoothing) {
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  Grid2 rect(n, n, unit, Boundary::periodic);
  switch (variant) {
    case GridVariant::uniform: return rect;
    case GridVariant::perturbed: {
      Grid2 g = rect;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Point2 p = rect.point(i, j);
          const double d = 0.05 * std::sin(2.0 * kPi * p.x) * std::sin(2.0 * kPi * p.y);
          g.set_point(i, j, {p.x + d, p.y + d});
        }
      return g;
    }
    case GridVariant::circular: {
      Grid2 g = rect;
      const Point2 c{0.5, 0.5};
      const double radius = 0.5;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Point2 p = rect.point(i, j);
          const double rho = norm(p - c) / radius;
          if (rho >= 1.0) continue;
          const double s = 1.0 - rho * rho;
          g.set_point(i, j, c + (1.0 + 0.25 * s * s) * (p - c));
        }
      return g;
    }
    case GridVariant::shifted: {
      const Grid2 shifted = point_shift(rect, Curve::circle({0.5, 0.5}, 0.24));
      return smoothing > 0 ? smooth_shift(shifted, rect, smoothing) : shifted;
    }
  }
  return rect;
}

Curve scatterer_curve(ExperimentKind kind) {
  if (kind == ExperimentKind::scatter_complex) return Curve::star({0.5, 0.5}, 0.24, 0.25, 5);
  return Curve::circle({0.5, 0.5}, 0.24);
}

long step_count(double t, double dt) {
  require(t >= 0.0 && dt > 0.0, "step_count: invalid arguments");
  return static_cast<long>(std::floor(t / dt * (1.0 + 1e-12)));
}

unsigned worker_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("SOLVER_THREADS")) n = static_cast<unsigned>(std::atoi(env));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::vector<ErrorRow> ExperimentReport::rows() const {
  std::vector<ErrorRow> out;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const SizeResult& s = sizes[k];
    const std::string label =
        s.dims == 1 ? std::to_string(s.n) : std::to_string(s.n) + "x" + std::to_string(s.n);
    ErrorRow r{label, s.n, s.h, s.dt, s.error, {}};
    if (k > 0 && k - 1 < orders.size()) r.order = orders[k - 1];
    out.push_back(r);
  }
  return out;
}

void check_time_step(const ExperimentConfig& config, int dims, double h, double dt) {
  if (config.allow_unstable) return;
  double bound = 0.0;
  if (config.bfecc) {
    bound = cfl_bound(config.scheme, std::vector<double>(static_cast<std::size_t>(dims), h),
                      config.theta);
  } else if (config.scheme != SchemeKind::cd && config.scheme != SchemeKind::ls_cd) {
    bound = h / std::sqrt(static_cast<double>(dims));
  }
  if (dt > bound * (1.0 + 1e-12))
    fail(Errc::invalid_argument, "time step " + std::to_string(dt) +
                                     " exceeds the stability bound " + std::to_string(bound) +
                                     " (set run.allow_unstable to force)");
}

namespace {

SizeResult run_periodic1d(const ExperimentConfig& c, int n) {
  const double h = 1.0 / n;
  const double dt = c.lambda * h;
  check_time_step(c, 1, h, dt);
  const SchemeSpec spec{c.scheme, c.theta, dt, Direction::forward};

  FieldState1 u(static_cast<std::size_t>(n)), next;
  for (int j = 0; j < n; ++j) u.E[j] = u.H[j] = std::sin(2.0 * kPi * j * h);
  BfeccStep1 stepper(spec, h);
  const long steps = step_count(c.final_time, dt);
  double sup = 0.0;
  for (long s = 1; s <= steps; ++s) {
    if (c.bfecc)
      stepper.step(u, next);
    else
      step_1d(spec, u, h, next);
    std::swap(u, next);
    if (s % kCheckEvery == 0 || s == steps) {
      sup = 0.0;
      for (int j = 0; j < n; ++j) sup = std::max({sup, std::abs(u.E[j]), std::abs(u.H[j])});
      if (!std::isfinite(u.E[0])) sup = INFINITY;
      check_growth(sup, s);
    }
  }
  const double t = steps * dt;
  FieldState1 exact(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) exact.E[j] = exact.H[j] = std::sin(2.0 * kPi * (j * h + t));

  SizeResult r{n, h, dt, steps, l2_error(u, exact), 0.0, sup, 1};
  r.error = r.errors.value(c.norm);
  return r;
}

FieldState2 plane_wave_2d(const Grid2& g, double t) {
  FieldState2 s(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double e = std::sin(2.0 * kPi * (g.point(k).x - t));
    s.Ez[k] = e;
    s.Hy[k] = -e;
  }
  return s;
}

void write_snapshot(const ExperimentConfig& c, int n, const Grid2& g, const FieldState2& s) {
  if (c.output_dir.empty() || !c.snapshots) return;
  std::filesystem::create_directories(c.output_dir);
  const auto path = std::filesystem::path(c.output_dir) / ("snapshot_n" + std::to_string(n) + ".csv");
  std::ofstream os(path);
  if (!os) fail(Errc::io, "cannot write " + path.string());
  write_snapshot_csv(os, g, s);
}

void advance_checked(MaxwellSolver2& solver, long steps) {
  for (long s = 1; s <= steps; ++s) {
    solver.step();
    if (s % kCheckEvery == 0 || s == steps) check_growth(solver.sup_norm(), s);
  }
}

SizeResult run_periodic2d(const ExperimentConfig& c, int n) {
  auto grid = std::make_shared<const Grid2>(grid_variant(c.variant, n, c.smoothing));
  const double h = 1.0 / n;
  const double dt = c.lambda * h;
  check_time_step(c, 2, h, dt);
  MaxwellSolver2 solver(grid, c.scheme, c.theta, dt, nullptr, c.bfecc, c.lsq);
  solver.set_state(plane_wave_2d(*grid, 0.0));
  const long steps = step_count(c.final_time, dt);
  advance_checked(solver, steps);
  const FieldState2 exact = plane_wave_2d(*grid, steps * dt);
  SizeResult r{n, h, dt, steps, l2_error(solver.state(), exact), 0.0, solver.sup_norm()};
  r.error = r.errors.value(c.norm);
  write_snapshot(c, n, *grid, solver.state());
  return r;
}

struct ScatterRun {
  ScatterSetup setup;
  FieldState2 state;
  long steps = 0;
  double sup = 0.0;
};

ScatterRun run_scatter(const ExperimentConfig& c, int n) {
  ScatterRun run;
  run.setup = scatter_setup(c, n);
  check_time_step(c, 2, 1.0 / n, run.setup.dt);
  auto solver = make_scatter_solver(c, run.setup);
  run.steps = step_count(c.final_time, run.setup.dt);
  advance_checked(*solver, run.steps);
  run.state = solver->state();
  run.sup = solver->sup_norm();
  return run;
}

}  // namespace

ScatterSetup scatter_setup(const ExperimentConfig& c, int n) {
  ScatterSetup s;
  const double h = 1.0 / n;
  const double cells = c.pml_thickness * n;
  const int p = static_cast<int>(std::lround(cells));
  require(std::abs(cells - p) <= 1e-9 * std::max(1.0, cells),
          "pml.thickness must be a whole number of cells at every grid size");
  const int points = n + 1 + 2 * p;
  const double lo = -p * h;
  const double hi = 1.0 + p * h;
  Grid2 rect(points, points, {lo, lo, hi, hi}, Boundary::bounded);
  const Curve curve = scatterer_curve(c.experiment);
  Grid2 g = rect;
  if (c.variant == GridVariant::shifted) {
    g = point_shift(rect, curve);
    if (c.smoothing > 0) g = smooth_shift(g, rect, c.smoothing);
  }
  s.grid = std::make_shared<const Grid2>(std::move(g));
  s.dt = c.lambda * h;

  auto m = std::make_shared<Material>();
  m->eps.assign(s.grid->size(), 1.0);
  m->mu.assign(s.grid->size(), 1.0);
  s.interior_mask.assign(s.grid->size(), 0);
  const double tol = 1e-12 * h;
  for (std::size_t k = 0; k < s.grid->size(); ++k) {
    if (curve.inside(s.grid->point(k), tol)) {
      m->eps[k] = c.eps_inside;
      m->mu[k] = c.mu_inside;
    }
  }
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j)
      if (s.interior.contains(rect.point(i, j), tol)) s.interior_mask[rect.index(i, j)] = 1;
  s.material = std::move(m);
  return s;
}

std::unique_ptr<MaxwellSolver2> make_scatter_solver(const ExperimentConfig& c,
                                                    const ScatterSetup& s) {
  auto solver = std::make_unique<MaxwellSolver2>(s.grid, c.scheme, c.theta, s.dt, s.material,
                                                 c.bfecc, c.lsq);
  solver->set_pml(make_pml(*s.grid, s.interior, c.pml_thickness, c.pml_sigma_max,
                           c.pml_exponent, s.dt));
  const PlaneWave wave{c.tfsf_amplitude, c.tfsf_omega, c.tfsf_rect.x0, c.tfsf_ramp};
  solver->set_tfsf(TfsfSource(*s.grid, c.tfsf_rect, s.interior, wave));
  return solver;
}

SizeResult run_single(const ExperimentConfig& config, int n) {
  switch (config.experiment) {
    case ExperimentKind::periodic1d: return run_periodic1d(config, n);
    case ExperimentKind::periodic2d: return run_periodic2d(config, n);
    default: break;
  }
  const ScatterRun run = run_scatter(config, n);
  write_snapshot(config, n, *run.setup.grid, run.state);
  SizeResult r;
  r.n = n;
  r.h = 1.0 / n;
  r.dt = run.setup.dt;
  r.steps = run.steps;
  r.sup_norm = run.sup;
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.sizes.resize(config.sizes.size());
  std::vector<std::function<void()>> tasks;
  const bool scatter = config.experiment == ExperimentKind::scatter_cylinder ||
                       config.experiment == ExperimentKind::scatter_complex;

  if (!scatter) {
    for (std::size_t k = 0; k < config.sizes.size(); ++k)
      tasks.push_back([&, k] { report.sizes[k] = run_single(config, config.sizes[k]); });
    run_parallel(tasks);
  } else {
    std::vector<ScatterRun> runs(config.sizes.size() + 1);
    tasks.push_back([&] { runs.back() = run_scatter(config, config.reference_n); });
    for (std::size_t k = 0; k < config.sizes.size(); ++k)
      tasks.push_back([&, k] { runs[k] = run_scatter(config, config.sizes[k]); });
    run_parallel(tasks);

    const ScatterRun& ref = runs.back();
    for (std::size_t k = 0; k < config.sizes.size(); ++k) {
      const ScatterRun& r = runs[k];
      const FieldState2 sampled = restrict_reference(*ref.setup.grid, ref.state, *r.setup.grid);
      SizeResult s;
      s.n = config.sizes[k];
      s.h = 1.0 / s.n;
      s.dt = r.setup.dt;
      s.steps = r.steps;
      s.errors = l2_error(r.state, sampled, r.setup.interior_mask);
      s.error = s.errors.value(config.norm);
      s.sup_norm = r.sup;
      report.sizes[k] = s;
      write_snapshot(config, s.n, *r.setup.grid, r.state);
    }
  }

  std::vector<double> errs;
  for (const auto& s : report.sizes) errs.push_back(s.error);
  bool positive = true;
  for (double e : errs) positive = positive && e > 0.0;
  if (errs.size() >= 2 && positive) report.orders = convergence_orders(errs);

  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    const auto path = std::filesystem::path(config.output_dir) / "errors.csv";
    std::ofstream os(path);
    if (!os) fail(Errc::io, "cannot write " + path.string());
    const auto rows = report.rows();
    write_error_csv(os, rows);
  }
  return report;
}

}  // namespace bfecc
