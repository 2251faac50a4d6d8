#include "bfecc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "bfecc/error.hpp"

namespace bfecc {

double norm(Point2 p) { return std::hypot(p.x, p.y); }

Curve Curve::circle(Point2 center, double radius) {
  require(radius > 0.0, "circle radius must be positive");
  auto phi = [center, radius](Point2 p) { return norm(p - center) - radius; };
  return Curve(phi, Circle{center, radius});
}

Curve Curve::implicit(Fn phi) {
  require(static_cast<bool>(phi), "implicit curve needs a function");
  return Curve(std::move(phi));
}

Curve Curve::star(Point2 center, double r0, double amplitude, int lobes) {
  require(r0 > 0.0 && std::abs(amplitude) < 1.0, "star curve must stay star-shaped");
  auto phi = [=](Point2 p) {
    const Point2 d = p - center;
    const double theta = std::atan2(d.y, d.x);
    return norm(d) - r0 * (1.0 + amplitude * std::cos(lobes * theta));
  };
  return Curve(phi);
}

Grid2::Grid2(int nx, int ny, Rect domain, Boundary boundary)
    : nx_(nx), ny_(ny), domain_(domain), boundary_(boundary) {
  require(nx >= 3 && ny >= 3, "grid needs at least 3 points per axis");
  require(domain.width() > 0.0 && domain.height() > 0.0, "degenerate grid domain");
  if (boundary == Boundary::periodic) {
    dx_ = domain.width() / nx;
    dy_ = domain.height() / ny;
  } else {
    dx_ = domain.width() / (nx - 1);
    dy_ = domain.height() / (ny - 1);
  }
  points_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  shifted_.assign(points_.size(), 0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) points_[index(i, j)] = rect_point(i, j);
}

void Grid2::set_point(int i, int j, Point2 p, bool on_curve) {
  points_[index(i, j)] = p;
  shifted_[index(i, j)] = on_curve ? 1 : 0;
}

bool Grid2::is_uniform() const {
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      if (!(points_[index(i, j)] == rect_point(i, j))) return false;
  return true;
}

bool Grid2::is_interior(int i, int j) const {
  if (boundary_ == Boundary::periodic) return true;
  return i > 0 && j > 0 && i < nx_ - 1 && j < ny_ - 1;
}

Grid2 build_uniform(int nx, int ny, Rect domain, Boundary boundary) {
  return Grid2(nx, ny, domain, boundary);
}

namespace {

// Nodes along one grid line, plus the periodic image of the first node.
std::vector<double> line_nodes(double start, double step, int count, double period_end,
                               bool periodic) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) t[k] = start + k * step;
  if (periodic) t.push_back(period_end);
  return t;
}

std::vector<double> circle_roots(const Curve::Circle& c, double offset_sq, double lo, double hi,
                                 bool hi_inclusive, double center) {
  std::vector<double> roots;
  const double disc = c.radius * c.radius - offset_sq;
  if (disc < 0.0) return roots;
  if (disc == 0.0) {
    roots.push_back(center);
  } else {
    const double s = std::sqrt(disc);
    roots.push_back(center - s);
    roots.push_back(center + s);
  }
  std::erase_if(roots, [&](double t) { return t < lo || (hi_inclusive ? t > hi : t >= hi); });
  return roots;
}

std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  const std::vector<double>& nodes, bool periodic, double tol) {
  std::vector<double> roots;
  const std::size_t segments = nodes.size() - 1;
  for (std::size_t k = 0; k < segments; ++k) {
    double a = nodes[k];
    double b = nodes[k + 1];
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa * fb >= 0.0) continue;
    for (int it = 0; it < 200 && b - a > tol; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  if (!periodic && f(nodes.back()) == 0.0) roots.push_back(nodes.back());
  return roots;
}

}  // namespace

std::vector<Intersection> curve_grid_intersections(const Grid2& grid, const Curve& curve) {
  std::vector<Intersection> out;
  const Rect& d = grid.domain();
  const bool periodic = grid.boundary() == Boundary::periodic;
  const double tol = 1e-14 * std::min(grid.dx(), grid.dy());

  const auto ynodes = line_nodes(d.y0, grid.dy(), grid.ny(), d.y1, periodic);
  const auto xnodes = line_nodes(d.x0, grid.dx(), grid.nx(), d.x1, periodic);
  const auto& circle = curve.as_circle();

  for (int i = 0; i < grid.nx(); ++i) {
    const double x = d.x0 + i * grid.dx();
    std::vector<double> roots;
    if (circle) {
      const double off = x - circle->center.x;
      roots = circle_roots(*circle, off * off, ynodes.front(), ynodes.back(), !periodic,
                           circle->center.y);
    } else {
      roots = bracket_roots([&](double y) { return curve({x, y}); }, ynodes, periodic, tol);
    }
    for (double y : roots) out.push_back({{x, y}, LineAxis::x_const, i});
  }
  for (int j = 0; j < grid.ny(); ++j) {
    const double y = d.y0 + j * grid.dy();
    std::vector<double> roots;
    if (circle) {
      const double off = y - circle->center.y;
      roots = circle_roots(*circle, off * off, xnodes.front(), xnodes.back(), !periodic,
                           circle->center.x);
    } else {
      roots = bracket_roots([&](double x) { return curve({x, y}); }, xnodes, periodic, tol);
    }
    for (double x : roots) out.push_back({{x, y}, LineAxis::y_const, j});
  }
  return out;
}

namespace {

// Nearest lattice index; exact ties go to the smaller index.
int nearest_index(double u) { return static_cast<int>(std::ceil(u - 0.5)); }

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

Grid2 point_shift(const Grid2& grid, const Curve& curve) {
  Grid2 out = grid;
  const Rect& d = grid.domain();
  const bool periodic = grid.boundary() == Boundary::periodic;
  for (const Intersection& s : curve_grid_intersections(grid, curve)) {
    int i = nearest_index((s.p.x - d.x0) / grid.dx());
    int j = nearest_index((s.p.y - d.y0) / grid.dy());
    Point2 q = s.p;
    if (periodic) {
      const int wi = wrap(i, grid.nx());
      const int wj = wrap(j, grid.ny());
      q.x -= (i - wi) * grid.dx();
      q.y -= (j - wj) * grid.dy();
      i = wi;
      j = wj;
    } else {
      i = std::clamp(i, 0, grid.nx() - 1);
      j = std::clamp(j, 0, grid.ny() - 1);
    }
    out.set_point(i, j, q, true);
  }
  return out;
}

Grid2 smooth_shift(const Grid2& shifted, const Grid2& rect, int iterations) {
  require(shifted.nx() == rect.nx() && shifted.ny() == rect.ny() &&
              shifted.boundary() == rect.boundary(),
          "smooth_shift: grids must share topology");
  require(iterations >= 0, "smooth_shift: negative iteration count");
  const int nx = rect.nx();
  const int ny = rect.ny();
  const bool periodic = rect.boundary() == Boundary::periodic;

  std::vector<Point2> disp(rect.size());
  for (std::size_t k = 0; k < rect.size(); ++k) disp[k] = shifted.point(k) - rect.point(k);

  auto at = [&](const std::vector<Point2>& v, int i, int j) -> Point2 {
    if (periodic) return v[rect.index(wrap(i, nx), wrap(j, ny))];
    if (i < 0 || j < 0 || i >= nx || j >= ny) return {};
    return v[rect.index(i, j)];
  };

  for (int it = 0; it < iterations; ++it) {
    std::vector<Point2> next = disp;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        if (!rect.is_interior(i, j)) continue;
        const std::size_t k = rect.index(i, j);
        if (!(disp[k] == Point2{})) continue;
        const Point2 sum = at(disp, i - 1, j) + at(disp, i + 1, j) + at(disp, i, j - 1) +
                           at(disp, i, j + 1);
        next[k] = 0.25 * sum;
      }
    }
    disp = std::move(next);
  }

  Grid2 out = shifted;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const std::size_t k = rect.index(i, j);
      out.set_point(i, j, rect.point(k) + disp[k], shifted.shifted(i, j));
    }
  return out;
}

std::array<StencilPoint, 5> stencil(const Grid2& grid, int i, int j) {
  require(i >= 0 && j >= 0 && i < grid.nx() && j < grid.ny(), "stencil: index out of range");
  if (!grid.is_interior(i, j))
    fail(Errc::missing_boundary, "stencil: boundary index on a bounded grid has no neighbours");

  const int nx = grid.nx();
  const int ny = grid.ny();
  const double w = grid.domain().width();
  const double h = grid.domain().height();

  auto make = [&](int ii, int jj) {
    const int wi = wrap(ii, nx);
    const int wj = wrap(jj, ny);
    Point2 p = grid.point(wi, wj);
    // Unwrap periodic images so the stencil stays local.
    if (ii < 0) p.x -= w;
    if (ii >= nx) p.x += w;
    if (jj < 0) p.y -= h;
    if (jj >= ny) p.y += h;
    return StencilPoint{wi, wj, grid.index(wi, wj), p};
  };
  return {make(i, j), make(i - 1, j), make(i + 1, j), make(i, j - 1), make(i, j + 1)};
}

void write_grid_csv(std::ostream& os, const Grid2& grid) {
  char buf[160];
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.ny(); ++j) {
      const Point2 p = grid.point(i, j);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%d\n", i, j, p.x, p.y,
                    grid.shifted(i, j) ? 1 : 0);
      os << buf;
    }
}

}  // namespace bfecc
