#include "bfecc/schemes.hpp"

#include <cmath>

#include "bfecc/error.hpp"
#include "bfecc/lsq.hpp"

namespace bfecc {

const char* to_string(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::cd: return "cd";
    case SchemeKind::lf: return "lf";
    case SchemeKind::theta: return "theta";
    case SchemeKind::ls_cd: return "ls_cd";
    case SchemeKind::ls_theta: return "ls_theta";
  }
  return "?";
}

SchemeKind parse_scheme_kind(const std::string& name) {
  for (SchemeKind k : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta, SchemeKind::ls_cd,
                       SchemeKind::ls_theta})
    if (name == to_string(k)) return k;
  fail(Errc::invalid_argument, "unknown scheme kind '" + name + "'");
}

SchemeSpec SchemeSpec::reversed() const {
  SchemeSpec s = *this;
  s.direction = direction == Direction::forward ? Direction::backward : Direction::forward;
  return s;
}

void SchemeSpec::validate() const {
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  require(theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
}

double averaging_weight(SchemeKind kind, double theta) {
  switch (kind) {
    case SchemeKind::cd: return 0.0;
    case SchemeKind::lf: return 1.0;
    case SchemeKind::theta: return theta;
    default: fail(Errc::scheme_mismatch, "least-squares schemes have no fixed averaging weight");
  }
}

std::shared_ptr<const Material> Material::uniform(std::size_t n, double eps, double mu) {
  auto m = std::make_shared<Material>();
  m->eps.assign(n, eps);
  m->mu.assign(n, mu);
  m->validate(n);
  return m;
}

void Material::validate(std::size_t n) const {
  require(eps.size() == n && mu.size() == n, "material size does not match the field");
  for (std::size_t k = 0; k < n; ++k)
    require(eps[k] > 0.0 && mu[k] > 0.0, "eps and mu must be positive");
}

void FieldState2::resize_like(const FieldState2& other) {
  Hx.resize(other.size());
  Hy.resize(other.size());
  Ez.resize(other.size());
  material = other.material;
}

namespace {

void lincomb(double a, const std::vector<double>& x, double b, const std::vector<double>& y,
             std::vector<double>& out) {
  require(x.size() == y.size(), "combine: size mismatch");
  out.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k] + b * y[k];
}

}  // namespace

void combine(double a, const FieldState1& x, double b, const FieldState1& y, FieldState1& out) {
  lincomb(a, x.E, b, y.E, out.E);
  lincomb(a, x.H, b, y.H, out.H);
  out.material = x.material;
}

void combine(double a, const FieldState2& x, double b, const FieldState2& y, FieldState2& out) {
  lincomb(a, x.Hx, b, y.Hx, out.Hx);
  lincomb(a, x.Hy, b, y.Hy, out.Hy);
  lincomb(a, x.Ez, b, y.Ez, out.Ez);
  out.material = x.material;
}

void step_1d(const SchemeSpec& spec, const FieldState1& in, double dx, FieldState1& out) {
  spec.validate();
  require(dx > 0.0, "grid spacing must be positive");
  require(&in != &out, "step_1d: output must not alias input");
  const std::size_t n = in.size();
  require(n >= 3 && in.H.size() == n, "step_1d: need at least 3 points");
  if (in.material) in.material->validate(n);
  const double w = averaging_weight(spec.kind, spec.theta);
  const double half_lambda = 0.5 * spec.signed_dt() / dx;

  out.E.resize(n);
  out.H.resize(n);
  out.material = in.material;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t l = j == 0 ? n - 1 : j - 1;
    const std::size_t r = j + 1 == n ? 0 : j + 1;
    const double ie = in.material ? 1.0 / in.material->eps[j] : 1.0;
    const double im = in.material ? 1.0 / in.material->mu[j] : 1.0;
    out.E[j] = (1.0 - w) * in.E[j] + 0.5 * w * (in.E[l] + in.E[r]) +
               half_lambda * ie * (in.H[r] - in.H[l]);
    out.H[j] = (1.0 - w) * in.H[j] + 0.5 * w * (in.H[l] + in.H[r]) +
               half_lambda * im * (in.E[r] - in.E[l]);
  }
}

FieldState1 step_1d(const SchemeSpec& spec, const FieldState1& in, double dx) {
  FieldState1 out;
  step_1d(spec, in, dx, out);
  return out;
}

Operator2::Operator2(std::shared_ptr<const Grid2> grid, SchemeKind kind, double theta,
                     LsqMode mode)
    : grid_(std::move(grid)), kind_(kind), theta_(theta), mode_(mode) {
  require(grid_ != nullptr, "Operator2 needs a grid");
  require(theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
  const bool uniform_kind =
      kind == SchemeKind::cd || kind == SchemeKind::lf || kind == SchemeKind::theta;
  if (uniform_kind && !grid_->is_uniform())
    fail(Errc::scheme_mismatch,
         std::string("scheme '") + to_string(kind) + "' requires a uniform rectangular grid");

  const int nx = grid_->nx();
  const int ny = grid_->ny();
  active_.assign(grid_->size(), 0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) active_[grid_->index(i, j)] = grid_->is_interior(i, j) ? 1 : 0;

  // Weights are always computed once so a degenerate stencil fails here
  // rather than in the middle of a run.
  std::vector<Weights> all(grid_->size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      if (active_[grid_->index(i, j)]) all[grid_->index(i, j)] = compute(i, j);
  if (mode_ == LsqMode::cached) cache_ = std::move(all);
}

Operator2::Weights Operator2::compute(int i, int j) const {
  const auto st = stencil(*grid_, i, j);
  Weights w;
  for (int m = 0; m < 5; ++m) w.index[m] = static_cast<std::uint32_t>(st[m].index);

  if (kind_ == SchemeKind::ls_cd || kind_ == SchemeKind::ls_theta) {
    std::array<Point2, 5> rel;
    for (int m = 0; m < 5; ++m) rel[m] = st[m].p - st[0].p;
    const LinearFitWeights f = fit_weights(rel);
    for (int m = 0; m < 5; ++m) {
      w.ddx[m] = f.ddx[m];
      w.ddy[m] = f.ddy[m];
      w.value[m] = kind_ == SchemeKind::ls_theta ? f.value[m] : (m == 0 ? 1.0 : 0.0);
    }
    return w;
  }

  const double a = averaging_weight(kind_, theta_);
  const double hx = 0.5 / grid_->dx();
  const double hy = 0.5 / grid_->dy();
  w.value = {1.0 - a, 0.25 * a, 0.25 * a, 0.25 * a, 0.25 * a};
  w.ddx = {0.0, -hx, hx, 0.0, 0.0};
  w.ddy = {0.0, 0.0, 0.0, -hy, hy};
  return w;
}

Operator2::Weights Operator2::weights(std::size_t k) const {
  require(k < grid_->size() && active_[k], "weights: point has no stencil");
  if (mode_ == LsqMode::cached) return cache_[k];
  const int i = static_cast<int>(k / static_cast<std::size_t>(grid_->ny()));
  const int j = static_cast<int>(k % static_cast<std::size_t>(grid_->ny()));
  return compute(i, j);
}

void Operator2::apply(const FieldState2& in, double dt, FieldState2& out,
                      const DerivativeScaling& scaling, Derivatives2* derivatives) const {
  const std::size_t n = grid_->size();
  require(in.size() == n && in.Hx.size() == n && in.Hy.size() == n,
          "field size does not match the grid");
  require(&in != &out, "apply: output must not alias input");
  require(std::isfinite(dt), "time step must be finite");
  if (in.material) require(in.material->eps.size() == n, "material size does not match the grid");
  out.resize_like(in);
  if (derivatives) {
    derivatives->dHy_dx.assign(n, 0.0);
    derivatives->dHx_dy.assign(n, 0.0);
    derivatives->dEz_dx.assign(n, 0.0);
    derivatives->dEz_dy.assign(n, 0.0);
  }
  const double* eps = in.material ? in.material->eps.data() : nullptr;
  const double* mu = in.material ? in.material->mu.data() : nullptr;
  const double* bx = scaling.bx ? scaling.bx->data() : nullptr;
  const double* by = scaling.by ? scaling.by->data() : nullptr;

  Weights local;
  for (std::size_t k = 0; k < n; ++k) {
    if (!active_[k]) {
      out.Hx[k] = in.Hx[k];
      out.Hy[k] = in.Hy[k];
      out.Ez[k] = in.Ez[k];
      continue;
    }
    const Weights* w = &local;
    if (mode_ == LsqMode::cached)
      w = &cache_[k];
    else
      local = weights(k);

    double vx = 0, vy = 0, vz = 0, hy_x = 0, hx_y = 0, ez_x = 0, ez_y = 0;
    for (int m = 0; m < 5; ++m) {
      const std::uint32_t q = w->index[m];
      vx += w->value[m] * in.Hx[q];
      vy += w->value[m] * in.Hy[q];
      vz += w->value[m] * in.Ez[q];
      hy_x += w->ddx[m] * in.Hy[q];
      ez_x += w->ddx[m] * in.Ez[q];
      hx_y += w->ddy[m] * in.Hx[q];
      ez_y += w->ddy[m] * in.Ez[q];
    }
    const double sx = bx ? bx[k] : 1.0;
    const double sy = by ? by[k] : 1.0;
    const double ie = eps ? dt / eps[k] : dt;
    const double im = mu ? dt / mu[k] : dt;
    out.Hx[k] = vx - im * sy * ez_y;
    out.Hy[k] = vy + im * sx * ez_x;
    out.Ez[k] = vz + ie * (sx * hy_x - sy * hx_y);
    if (derivatives) {
      derivatives->dHy_dx[k] = hy_x;
      derivatives->dHx_dy[k] = hx_y;
      derivatives->dEz_dx[k] = ez_x;
      derivatives->dEz_dy[k] = ez_y;
    }
  }
}

void step_2d(const SchemeSpec& spec, const FieldState2& in, std::shared_ptr<const Grid2> grid,
             FieldState2& out) {
  spec.validate();
  Operator2 op(std::move(grid), spec.kind, spec.theta);
  op.apply(in, spec.signed_dt(), out);
}

FieldState2 step_2d(const SchemeSpec& spec, const FieldState2& in,
                    std::shared_ptr<const Grid2> grid) {
  FieldState2 out;
  step_2d(spec, in, std::move(grid), out);
  return out;
}

}  // namespace bfecc
