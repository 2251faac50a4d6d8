#include "bfecc/pml.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bfecc/error.hpp"

namespace bfecc {

PmlProfile pml_coefficients(int cells, double sigma_max, double exponent, double dt) {
  require(cells >= 4, "PML needs at least 4 cells");
  require(sigma_max > 0.0 && exponent >= 1.0 && dt > 0.0, "invalid PML parameters");
  PmlProfile p;
  for (int k = 0; k <= cells; ++k) {
    const double s = sigma_max * std::pow(static_cast<double>(k) / cells, exponent);
    const double b = std::exp(-s * dt);
    p.sigma.push_back(s);
    p.b.push_back(b);
    p.c.push_back(b - 1.0);
  }
  return p;
}

PmlState make_pml(const Grid2& grid, Rect interior, double thickness, double sigma_max,
                  double exponent, double dt) {
  require(grid.boundary() == Boundary::bounded, "PML layers need a bounded grid");
  require(thickness > 0.0 && sigma_max >= 0.0 && exponent >= 1.0 && dt > 0.0,
          "invalid PML parameters");
  const std::size_t n = grid.size();
  PmlState s;
  s.sigma_x.assign(n, 0.0);
  s.sigma_y.assign(n, 0.0);
  s.bx.assign(n, 1.0);
  s.by.assign(n, 1.0);
  s.cx.assign(n, 0.0);
  s.cy.assign(n, 0.0);
  s.psi_ezx.assign(n, 0.0);
  s.psi_ezy.assign(n, 0.0);
  s.psi_hxy.assign(n, 0.0);
  s.psi_hyx.assign(n, 0.0);

  auto grade = [&](double depth) {
    if (depth <= 0.0) return 0.0;
    return sigma_max * std::pow(std::min(depth / thickness, 1.0), exponent);
  };
  const double tol = 1e-12 * std::min(grid.dx(), grid.dy());
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) {
      const std::size_t k = grid.index(i, j);
      const Point2 p = grid.rect_point(i, j);
      const double sx = grade(std::max(interior.x0 - p.x, p.x - interior.x1) - tol);
      const double sy = grade(std::max(interior.y0 - p.y, p.y - interior.y1) - tol);
      s.sigma_x[k] = sx;
      s.sigma_y[k] = sy;
      s.bx[k] = std::exp(-sx * dt);
      s.by[k] = std::exp(-sy * dt);
      s.cx[k] = s.bx[k] - 1.0;
      s.cy[k] = s.by[k] - 1.0;
      if (sx > 0.0 || sy > 0.0) s.layer.push_back(static_cast<std::uint32_t>(k));
    }
  return s;
}

void pml_step(const Operator2& op, double dt, const FieldState2& in, PmlState& pml,
              FieldState2& out) {
  Derivatives2 d;
  op.apply(in, dt, out, pml.scaling(), pml.layer.empty() ? nullptr : &d);
  const Material* m = in.material.get();
  for (std::uint32_t k : pml.layer) {
    if (!op.active(k)) continue;
    const double te = m ? dt / m->eps[k] : dt;
    const double tm = m ? dt / m->mu[k] : dt;
    out.Ez[k] += te * (pml.bx[k] * pml.psi_ezx[k] - pml.by[k] * pml.psi_ezy[k]);
    out.Hx[k] -= tm * pml.by[k] * pml.psi_hxy[k];
    out.Hy[k] += tm * pml.bx[k] * pml.psi_hyx[k];
    pml.psi_ezx[k] = pml.bx[k] * pml.psi_ezx[k] + pml.cx[k] * d.dHy_dx[k];
    pml.psi_ezy[k] = pml.by[k] * pml.psi_ezy[k] + pml.cy[k] * d.dHx_dy[k];
    pml.psi_hxy[k] = pml.by[k] * pml.psi_hxy[k] + pml.cy[k] * d.dEz_dy[k];
    pml.psi_hyx[k] = pml.bx[k] * pml.psi_hyx[k] + pml.cx[k] * d.dEz_dx[k];
  }
}

double PlaneWave::ez(double x, double t) const {
  double g = 1.0;
  if (ramp > 0.0) {
    const double s = std::clamp((t - (x - x0)) / ramp, 0.0, 1.0);
    g = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  }
  return amplitude * g * std::sin(omega * (x - t));
}

TfsfSource::TfsfSource(const Grid2& grid, Rect rect, Rect interior, PlaneWave wave, int margin)
    : grid_(&grid), wave_(wave) {
  require(grid.boundary() == Boundary::bounded, "TF/SF needs a bounded grid");
  const Rect& d = grid.domain();
  auto to_index = [](double v, double origin, double h, const char* what) {
    const double u = (v - origin) / h;
    const double r = std::round(u);
    require(std::abs(u - r) <= 1e-9, std::string("TF/SF rectangle ") + what +
                                         " is not on a grid line");
    return static_cast<int>(r);
  };
  const int i0 = to_index(rect.x0, d.x0, grid.dx(), "x0");
  const int i1 = to_index(rect.x1, d.x0, grid.dx(), "x1");
  const int j0 = to_index(rect.y0, d.y0, grid.dy(), "y0");
  const int j1 = to_index(rect.y1, d.y0, grid.dy(), "y1");
  require(i0 < i1 && j0 < j1, "TF/SF rectangle is empty");
  const double mx = margin * grid.dx() * (1.0 - 1e-9);
  const double my = margin * grid.dy() * (1.0 - 1e-9);
  if (!(rect.x0 - interior.x0 >= mx && interior.x1 - rect.x1 >= mx &&
        rect.y0 - interior.y0 >= my && interior.y1 - rect.y1 >= my))
    fail(Errc::invalid_argument, "TF/SF rectangle touches the absorbing layers");

  chi_.assign(grid.size(), 0);
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) chi_[grid.index(i, j)] = 1;
}

void TfsfSource::incident(double t, FieldState2& out) const {
  const std::size_t n = grid_->size();
  out.Hx.assign(n, 0.0);
  out.Hy.resize(n);
  out.Ez.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double e = wave_.ez(grid_->point(k).x, t);
    out.Ez[k] = e;
    out.Hy[k] = -e;
  }
}

void TfsfSource::correction(double t, const std::shared_ptr<const Material>& material,
                            const Operator& step, FieldState2& corr) const {
  const std::size_t n = grid_->size();
  FieldState2 inc;
  incident(t, inc);
  FieldState2 inside(n), outside(n), b_in, b_out;
  inside.material = outside.material = material;
  for (std::size_t k = 0; k < n; ++k) {
    FieldState2& dst = chi_[k] ? inside : outside;
    dst.Hx[k] = inc.Hx[k];
    dst.Hy[k] = inc.Hy[k];
    dst.Ez[k] = inc.Ez[k];
  }
  step(outside, b_out);
  step(inside, b_in);
  corr.Hx.assign(n, 0.0);
  corr.Hy.assign(n, 0.0);
  corr.Ez.assign(n, 0.0);
  corr.material = material;
  for (std::size_t k = 0; k < n; ++k) {
    const FieldState2& src = chi_[k] ? b_out : b_in;
    const double sign = chi_[k] ? 1.0 : -1.0;
    corr.Hx[k] = sign * src.Hx[k];
    corr.Hy[k] = sign * src.Hy[k];
    corr.Ez[k] = sign * src.Ez[k];
  }
}

}  // namespace bfecc
