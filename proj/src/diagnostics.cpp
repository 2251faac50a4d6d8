#include "bfecc/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bfecc/error.hpp"

namespace bfecc {

std::vector<double> numerical_divergence_h(const FieldState2& state, const Grid2& grid) {
  if (grid.boundary() != Boundary::periodic || !grid.is_uniform())
    fail(Errc::scheme_mismatch, "numerical divergence is defined on uniform periodic grids only");
  require(state.size() == grid.size() && state.Hx.size() == grid.size(),
          "field size does not match the grid");
  const int nx = grid.nx();
  const int ny = grid.ny();
  std::vector<double> div(grid.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double dhx = state.Hx[grid.index((i + 1) % nx, j)] -
                         state.Hx[grid.index((i + nx - 1) % nx, j)];
      const double dhy = state.Hy[grid.index(i, (j + 1) % ny)] -
                         state.Hy[grid.index(i, (j + ny - 1) % ny)];
      div[grid.index(i, j)] = dhx / (2.0 * grid.dx()) + dhy / (2.0 * grid.dy());
    }
  return div;
}

const char* to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::rms: return "rms";
    case NormKind::component_sum: return "component_sum";
    case NormKind::ez: return "ez";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& name) {
  for (NormKind k : {NormKind::rms, NormKind::component_sum, NormKind::ez})
    if (name == to_string(k)) return k;
  fail(Errc::invalid_argument, "unknown norm '" + name + "'");
}

double NormBreakdown::value(NormKind kind) const {
  switch (kind) {
    case NormKind::rms: return rms;
    case NormKind::component_sum: return component_sum;
    case NormKind::ez: return per_component.at(electric);
  }
  return rms;
}

namespace {

NormBreakdown breakdown(std::span<const std::vector<double>* const> num,
                        std::span<const std::vector<double>* const> ref,
                        std::span<const std::uint8_t> mask) {
  NormBreakdown out;
  const std::size_t n = num[0]->size();
  require(mask.empty() || mask.size() == n, "mask size does not match the field");
  std::size_t npts = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (mask.empty() || mask[k]) ++npts;
  require(npts > 0, "l2_error: no points selected");
  double total = 0.0;
  for (std::size_t c = 0; c < num.size(); ++c) {
    require(num[c]->size() == n && ref[c]->size() == n, "l2_error: shape mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!mask.empty() && !mask[k]) continue;
      const double d = (*num[c])[k] - (*ref[c])[k];
      s += d * d;
    }
    total += s;
    const double comp = std::sqrt(s / static_cast<double>(npts));
    out.per_component.push_back(comp);
    out.component_sum += comp;
  }
  out.rms = std::sqrt(total / static_cast<double>(npts * num.size()));
  return out;
}

}  // namespace

NormBreakdown l2_error(const FieldState1& numeric, const FieldState1& reference) {
  const std::vector<double>* a[] = {&numeric.E, &numeric.H};
  const std::vector<double>* b[] = {&reference.E, &reference.H};
  return breakdown(a, b, {});
}

NormBreakdown l2_error(const FieldState2& numeric, const FieldState2& reference,
                       std::span<const std::uint8_t> mask) {
  const std::vector<double>* a[] = {&numeric.Hx, &numeric.Hy, &numeric.Ez};
  const std::vector<double>* b[] = {&reference.Hx, &reference.Hy, &reference.Ez};
  NormBreakdown out = breakdown(a, b, mask);
  out.electric = 2;
  return out;
}

std::vector<double> convergence_orders(std::span<const double> errors) {
  require(errors.size() >= 2, "convergence_orders needs at least two errors");
  for (double e : errors) require(e > 0.0, "errors must be positive");
  std::vector<double> out;
  for (std::size_t k = 1; k < errors.size(); ++k)
    out.push_back(std::log2(errors[k - 1] / errors[k]));
  return out;
}

FieldState2 restrict_reference(const Grid2& fine, const FieldState2& reference,
                               const Grid2& coarse) {
  require(reference.size() == fine.size(), "reference size does not match its grid");
  FieldState2 out(coarse.size());
  const Rect& d = fine.domain();
  const double tol = 1e-12 * std::min(fine.dx(), fine.dy());
  const std::vector<double>* src[] = {&reference.Hx, &reference.Hy, &reference.Ez};
  std::vector<double>* dst[] = {&out.Hx, &out.Hy, &out.Ez};

  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const Point2 p = coarse.point(k);
    const int fi = std::clamp(static_cast<int>(std::lround((p.x - d.x0) / fine.dx())), 0,
                              fine.nx() - 1);
    const int fj = std::clamp(static_cast<int>(std::lround((p.y - d.y0) / fine.dy())), 0,
                              fine.ny() - 1);
    const std::size_t f = fine.index(fi, fj);
    if (norm(fine.point(f) - p) <= tol) {
      for (int c = 0; c < 3; ++c) (*dst[c])[k] = (*src[c])[f];
      continue;
    }
    // Quadratic fit in coordinates relative to p, so the constant term is the value at p.
    const int i0 = std::clamp(fi - 2, 0, fine.nx() - 5);
    const int j0 = std::clamp(fj - 2, 0, fine.ny() - 5);
    Eigen::Matrix<double, 25, 6> a;
    Eigen::Matrix<double, 25, 3> u;
    int r = 0;
    for (int i = i0; i < i0 + 5; ++i)
      for (int j = j0; j < j0 + 5; ++j, ++r) {
        const std::size_t q = fine.index(i, j);
        const Point2 rel = fine.point(q) - p;
        const double x = rel.x / fine.dx();
        const double y = rel.y / fine.dy();
        a.row(r) << 1.0, x, y, x * x, x * y, y * y;
        for (int c = 0; c < 3; ++c) u(r, c) = (*src[c])[q];
      }
    const Eigen::Matrix<double, 6, 3> coef = a.colPivHouseholderQr().solve(u);
    for (int c = 0; c < 3; ++c) (*dst[c])[k] = coef(0, c);
  }
  return out;
}

void write_error_csv(std::ostream& os, std::span<const ErrorRow> rows) {
  os << "grid,n,h,dt,l2_error,order\n";
  char buf[256];
  for (const ErrorRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.6g,%.6g,%.6g,", r.grid.c_str(), r.n, r.h, r.dt,
                  r.l2_error);
    os << buf;
    if (r.order) {
      std::snprintf(buf, sizeof buf, "%.6g", *r.order);
      os << buf;
    }
    os << '\n';
  }
}

void write_snapshot_csv(std::ostream& os, const Grid2& grid, const FieldState2& state) {
  require(state.size() == grid.size(), "snapshot: field size does not match the grid");
  os << "i,j,x,y,Ez,Hx,Hy\n";
  char buf[256];
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) {
      const std::size_t k = grid.index(i, j);
      const Point2 p = grid.point(k);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j, p.x, p.y,
                    state.Ez[k], state.Hx[k], state.Hy[k]);
      os << buf;
    }
}

}  // namespace bfecc
