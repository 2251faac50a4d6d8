#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace bfecc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

double norm(Point2 p);

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Point2 p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
};

enum class Boundary { periodic, bounded };

/// Closed curve given by an implicit function, negative inside. Circles keep
/// their parameters so intersections can be computed in closed form.
class Curve {
 public:
  using Fn = std::function<double(Point2)>;

  struct Circle {
    Point2 center;
    double radius;
  };

  static Curve circle(Point2 center, double radius);
  static Curve implicit(Fn phi);
  /// r(theta) = r0 * (1 + amplitude * cos(lobes * theta)) around `center`.
  static Curve star(Point2 center, double r0, double amplitude, int lobes);

  double operator()(Point2 p) const { return phi_(p); }
  bool inside(Point2 p, double tol = 0.0) const { return phi_(p) <= tol; }
  const std::optional<Circle>& as_circle() const { return circle_; }

 private:
  explicit Curve(Fn phi, std::optional<Circle> c = std::nullopt)
      : phi_(std::move(phi)), circle_(c) {}

  Fn phi_;
  std::optional<Circle> circle_;
};

/// Logically rectangular grid. Points are stored with index i*ny + j.
class Grid2 {
 public:
  Grid2() = default;
  Grid2(int nx, int ny, Rect domain, Boundary boundary);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  const Rect& domain() const { return domain_; }
  Boundary boundary() const { return boundary_; }
  std::size_t size() const { return points_.size(); }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(j);
  }
  Point2 point(int i, int j) const { return points_[index(i, j)]; }
  Point2 point(std::size_t idx) const { return points_[idx]; }
  /// Position of (i, j) on the undeformed rectangular lattice.
  Point2 rect_point(int i, int j) const { return {domain_.x0 + i * dx_, domain_.y0 + j * dy_}; }
  bool shifted(int i, int j) const { return shifted_[index(i, j)] != 0; }

  std::span<const Point2> points() const { return points_; }
  std::span<const std::uint8_t> shifted_mask() const { return shifted_; }

  void set_point(int i, int j, Point2 p, bool on_curve = false);
  void set_point(std::size_t idx, Point2 p) { points_[idx] = p; }

  /// True when every point sits exactly on its rectangular lattice position.
  bool is_uniform() const;
  /// Interior indices have all four neighbours; on periodic grids every index does.
  bool is_interior(int i, int j) const;

 private:
  int nx_ = 0;
  int ny_ = 0;
  double dx_ = 0.0;
  double dy_ = 0.0;
  Rect domain_{};
  Boundary boundary_ = Boundary::periodic;
  std::vector<Point2> points_;
  std::vector<std::uint8_t> shifted_;
};

Grid2 build_uniform(int nx, int ny, Rect domain, Boundary boundary);

enum class LineAxis { x_const, y_const };

struct Intersection {
  Point2 p;
  LineAxis axis;  // x_const: the line x = x_line, y_const: y = y_line
  int line;
};

std::vector<Intersection> curve_grid_intersections(const Grid2& grid, const Curve& curve);

Grid2 point_shift(const Grid2& grid, const Curve& curve);

Grid2 smooth_shift(const Grid2& shifted, const Grid2& rect, int iterations);

struct StencilPoint {
  int i;
  int j;
  std::size_t index;
  Point2 p;  // periodic images are unwrapped so the stencil is geometrically local
};

/// Center followed by (i-1,j), (i+1,j), (i,j-1), (i,j+1).
std::array<StencilPoint, 5> stencil(const Grid2& grid, int i, int j);

/// `i,j,x,y,shifted` per line, row-major, 17 significant digits.
void write_grid_csv(std::ostream& os, const Grid2& grid);

}  // namespace bfecc
