#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "bfecc/grid.hpp"
#include "bfecc/schemes.hpp"

namespace bfecc {

/// sigma, b = exp(-sigma dt) and c = b - 1 at depths 0..cells (in cells).
struct PmlProfile {
  std::vector<double> sigma;
  std::vector<double> b;
  std::vector<double> c;
};

/// sigma(k) = sigma_max * (k / cells)^exponent.
PmlProfile pml_coefficients(int cells, double sigma_max, double exponent, double dt);

/// Per-point absorbing-layer coefficients and the four recursive-convolution
/// accumulators of the unsplit layer.
struct PmlState {
  std::vector<double> sigma_x, sigma_y;
  std::vector<double> bx, by, cx, cy;
  std::vector<double> psi_ezx, psi_ezy, psi_hxy, psi_hyx;
  std::vector<std::uint32_t> layer;  // points with sigma_x > 0 or sigma_y > 0

  DerivativeScaling scaling() const { return {&bx, &by}; }
};

/// Layers occupy everything outside `interior`; depth is measured from the
/// interior edge on the undeformed lattice and graded over `thickness`.
PmlState make_pml(const Grid2& grid, Rect interior, double thickness, double sigma_max,
                  double exponent, double dt);

/// One operator application inside and outside the layers: derivative terms
/// scaled by b, history b * Psi^{n-1} added, then Psi^n = b Psi^{n-1} + c D^n
/// from the derivatives of `in`.
void pml_step(const Operator2& op, double dt, const FieldState2& in, PmlState& pml,
              FieldState2& out);

/// Plane wave travelling in +x:
///   Ez = A g(t - (x - x0)) sin(omega (x - t)),  Hy = -Ez,  Hx = 0,
/// with g a C2 quintic ramp from 0 to 1 over `ramp` time units (0 disables).
struct PlaneWave {
  double amplitude = 1.0;
  double omega = 0.0;
  double x0 = 0.0;
  double ramp = 0.0;

  double ez(double x, double t) const;
};

/// Total-field / scattered-field split on a logical index rectangle.
class TfsfSource {
 public:
  using Operator = std::function<void(const FieldState2& in, FieldState2& out)>;

  /// `rect` must be aligned with grid lines and lie at least `margin` cells
  /// inside `interior`.
  TfsfSource(const Grid2& grid, Rect rect, Rect interior, PlaneWave wave, int margin = 4);

  const PlaneWave& wave() const { return wave_; }
  bool total(std::size_t k) const { return chi_[k] != 0; }

  /// Incident fields at every grid point at time t.
  void incident(double t, FieldState2& out) const;

  /// Exact correction for a full linear step B taken at time t:
  ///   corr = chi B((1 - chi) I) - (1 - chi) B(chi I),
  /// so that B(W) + corr advances the total field inside and the scattered
  /// field outside.
  void correction(double t, const std::shared_ptr<const Material>& material, const Operator& step,
                  FieldState2& corr) const;

 private:
  const Grid2* grid_;
  PlaneWave wave_;
  std::vector<std::uint8_t> chi_;
};

}  // namespace bfecc
