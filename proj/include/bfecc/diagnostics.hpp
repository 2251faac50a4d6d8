#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bfecc/grid.hpp"
#include "bfecc/schemes.hpp"

namespace bfecc {

/// Central-difference divergence of (Hx, Hy) on a uniform periodic grid.
std::vector<double> numerical_divergence_h(const FieldState2& state, const Grid2& grid);

enum class NormKind { rms, component_sum, ez };

const char* to_string(NormKind kind) noexcept;
NormKind parse_norm_kind(const std::string& name);

/// Per-component RMS errors sqrt(sum d^2 / npts) and the two aggregates:
/// rms over all components, and the sum of the per-component values.
struct NormBreakdown {
  std::vector<double> per_component;  // 1D: E, H; 2D: Hx, Hy, Ez
  double rms = 0.0;
  double component_sum = 0.0;
  std::size_t electric = 0;  // index of E (1D) or Ez (2D) in per_component

  double value(NormKind kind) const;
};

/// `mask`, when given, selects the points entering the norm.
NormBreakdown l2_error(const FieldState1& numeric, const FieldState1& reference);
NormBreakdown l2_error(const FieldState2& numeric, const FieldState2& reference,
                       std::span<const std::uint8_t> mask = {});

/// order_i = log2(e_{i-1} / e_i).
std::vector<double> convergence_orders(std::span<const double> errors);

/// Reference fields sampled at the points of `coarse`. Coinciding points are
/// copied; otherwise a least-squares quadratic over the 5x5 block of fine
/// points around the nearest fine index is evaluated.
FieldState2 restrict_reference(const Grid2& fine, const FieldState2& reference,
                               const Grid2& coarse);

struct ErrorRow {
  std::string grid;
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  double l2_error = 0.0;
  std::optional<double> order;
};

/// `grid,n,h,dt,l2_error,order`, 6 significant digits, empty order on the
/// first row.
void write_error_csv(std::ostream& os, std::span<const ErrorRow> rows);

/// `i,j,x,y,Ez,Hx,Hy`, row-major.
void write_snapshot_csv(std::ostream& os, const Grid2& grid, const FieldState2& state);

}  // namespace bfecc
