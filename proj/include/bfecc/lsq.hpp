#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bfecc/grid.hpp"

namespace bfecc {

/// Local linear model u(x, y) ~ value + ddx * x + ddy * y around the first
/// stencil point, fitted in the least-squares sense.
struct LinearFit {
  double value = 0.0;
  double ddx = 0.0;
  double ddy = 0.0;
  double sigma_min = 0.0;  // smallest singular value of the design matrix
};

/// Linear functionals mapping stencil values to the fit coefficients. They
/// depend on geometry only, so a solver can compute them once per point.
struct LinearFitWeights {
  std::vector<double> value;
  std::vector<double> ddx;
  std::vector<double> ddy;
  double sigma_min = 0.0;
};

/// `points` are offsets relative to the fit center (the first entry is
/// normally (0, 0)). Throws RankDeficientError when sigma_min <= 1e-10 * h,
/// h being the largest offset length.
LinearFit fit_local_linear(std::span<const Point2> points, std::span<const double> values);

LinearFitWeights fit_weights(std::span<const Point2> points);

/// Slope of the least-squares line through (log x, log y). Pairs with y <= 0
/// are skipped; NaN when fewer than two remain.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct SmoothField {
  std::function<double(Point2)> value;
  std::function<Point2(Point2)> gradient;
};

/// Offsets of a stencil of size h relative to its center.
using StencilGenerator = std::function<std::vector<Point2>(double h)>;

struct LsqConvergence {
  std::vector<double> h;
  std::vector<double> gradient_error;  // |(b, c) - grad u|
  std::vector<double> value_error;     // |a - u(center)|
  double gradient_slope = 0.0;
  double value_slope = 0.0;
};

LsqConvergence gradient_error_bound_check(const StencilGenerator& stencil, Point2 center,
                                          const SmoothField& field, std::span<const double> hs);

}  // namespace bfecc
