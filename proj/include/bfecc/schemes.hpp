#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bfecc/grid.hpp"

namespace bfecc {

enum class SchemeKind { cd, lf, theta, ls_cd, ls_theta };
enum class Direction { forward, backward };

const char* to_string(SchemeKind kind) noexcept;
SchemeKind parse_scheme_kind(const std::string& name);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::cd;
  double theta = 0.0;  // only read for kind == theta
  double dt = 0.0;
  Direction direction = Direction::forward;

  double signed_dt() const { return direction == Direction::forward ? dt : -dt; }
  SchemeSpec reversed() const;
  void validate() const;
};

/// Weight of the neighbour average in the value part of a uniform-grid scheme.
double averaging_weight(SchemeKind kind, double theta);

/// Relative permittivity and permeability per point.
struct Material {
  std::vector<double> eps;
  std::vector<double> mu;

  static std::shared_ptr<const Material> uniform(std::size_t n, double eps = 1.0, double mu = 1.0);
  void validate(std::size_t n) const;
};

/// 1D fields; a null material means vacuum.
struct FieldState1 {
  std::vector<double> E;
  std::vector<double> H;
  std::shared_ptr<const Material> material;

  FieldState1() = default;
  explicit FieldState1(std::size_t n) : E(n, 0.0), H(n, 0.0) {}
  std::size_t size() const { return E.size(); }
};

/// 2D TMz fields (Hx, Hy, Ez); a null material means vacuum.
struct FieldState2 {
  std::vector<double> Hx;
  std::vector<double> Hy;
  std::vector<double> Ez;
  std::shared_ptr<const Material> material;

  FieldState2() = default;
  explicit FieldState2(std::size_t n) : Hx(n, 0.0), Hy(n, 0.0), Ez(n, 0.0) {}
  std::size_t size() const { return Ez.size(); }
  void resize_like(const FieldState2& other);
};

/// out = a*x + b*y component-wise; out may alias x or y.
void combine(double a, const FieldState1& x, double b, const FieldState1& y, FieldState1& out);
void combine(double a, const FieldState2& x, double b, const FieldState2& y, FieldState2& out);

void step_1d(const SchemeSpec& spec, const FieldState1& in, double dx, FieldState1& out);
FieldState1 step_1d(const SchemeSpec& spec, const FieldState1& in, double dx);

/// Derivative scaling (1 + c) = b inside absorbing layers; null vectors mean 1.
struct DerivativeScaling {
  const std::vector<double>* bx = nullptr;
  const std::vector<double>* by = nullptr;
};

/// Spatial derivatives used by one application, one value per point.
struct Derivatives2 {
  std::vector<double> dHy_dx;
  std::vector<double> dHx_dy;
  std::vector<double> dEz_dx;
  std::vector<double> dEz_dy;
};

enum class LsqMode { cached, recompute };

/// One-step operator for 2D TMz on a fixed grid. Stencil weights depend only
/// on geometry; with LsqMode::cached they are computed once at construction.
class Operator2 {
 public:
  Operator2(std::shared_ptr<const Grid2> grid, SchemeKind kind, double theta = 0.0,
            LsqMode mode = LsqMode::cached);

  const Grid2& grid() const { return *grid_; }
  SchemeKind kind() const { return kind_; }

  /// out <- L(in) with time step dt (negative for the backward operator).
  /// Points without a full stencil (edges of bounded grids) keep their value.
  void apply(const FieldState2& in, double dt, FieldState2& out,
             const DerivativeScaling& scaling = {}, Derivatives2* derivatives = nullptr) const;

  struct Weights {
    std::array<std::uint32_t, 5> index{};
    std::array<double, 5> value{};
    std::array<double, 5> ddx{};
    std::array<double, 5> ddy{};
  };
  /// Weights at one point (recomputed on demand in recompute mode).
  Weights weights(std::size_t k) const;
  bool active(std::size_t k) const { return active_[k] != 0; }

 private:
  Weights compute(int i, int j) const;

  std::shared_ptr<const Grid2> grid_;
  SchemeKind kind_;
  double theta_;
  LsqMode mode_;
  std::vector<std::uint8_t> active_;
  std::vector<Weights> cache_;
};

void step_2d(const SchemeSpec& spec, const FieldState2& in, std::shared_ptr<const Grid2> grid,
             FieldState2& out);
FieldState2 step_2d(const SchemeSpec& spec, const FieldState2& in,
                    std::shared_ptr<const Grid2> grid);

}  // namespace bfecc
