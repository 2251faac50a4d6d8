#include "bfecc/lsq.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "bfecc/error.hpp"

namespace bfecc {

namespace {

struct Factored {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  double sigma_min;
};

Factored factor(std::span<const Point2> points) {
  require(points.size() >= 3, "least-squares fit needs at least 3 points");
  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(rows, 3);
  double h = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    a(r, 0) = 1.0;
    a(r, 1) = points[r].x;
    a(r, 2) = points[r].y;
    h = std::max(h, norm(points[r]));
  }
  Factored f{Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(a), 0.0};
  // A = Q R P^T, so A and R share singular values.
  const Eigen::MatrixXd r = f.qr.matrixR().topLeftCorner(3, 3).triangularView<Eigen::Upper>();
  f.sigma_min = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues().minCoeff();
  if (!(f.sigma_min > 1e-10 * h))
    throw RankDeficientError(f.sigma_min, "degenerate stencil: sigma_min = " +
                                              std::to_string(f.sigma_min));
  return f;
}

}  // namespace

LinearFit fit_local_linear(std::span<const Point2> points, std::span<const double> values) {
  require(points.size() == values.size(), "fit_local_linear: size mismatch");
  const Factored f = factor(points);
  const Eigen::Map<const Eigen::VectorXd> u(values.data(), static_cast<Eigen::Index>(values.size()));
  const Eigen::Vector3d theta = f.qr.solve(u);
  return {theta(0), theta(1), theta(2), f.sigma_min};
}

LinearFitWeights fit_weights(std::span<const Point2> points) {
  const Factored f = factor(points);
  const auto n = static_cast<Eigen::Index>(points.size());
  const Eigen::MatrixXd pinv = f.qr.solve(Eigen::MatrixXd::Identity(n, n));
  LinearFitWeights w;
  w.sigma_min = f.sigma_min;
  w.value.resize(points.size());
  w.ddx.resize(points.size());
  w.ddy.resize(points.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    w.value[k] = pinv(0, k);
    w.ddx[k] = pinv(1, k);
    w.ddy[k] = pinv(2, k);
  }
  return w;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LsqConvergence gradient_error_bound_check(const StencilGenerator& stencil, Point2 center,
                                          const SmoothField& field, std::span<const double> hs) {
  LsqConvergence out;
  const Point2 grad = field.gradient(center);
  const double u0 = field.value(center);
  for (double h : hs) {
    const std::vector<Point2> offsets = stencil(h);
    std::vector<double> values(offsets.size());
    for (std::size_t k = 0; k < offsets.size(); ++k) values[k] = field.value(center + offsets[k]);
    const LinearFit fit = fit_local_linear(offsets, values);
    out.h.push_back(h);
    out.gradient_error.push_back(std::hypot(fit.ddx - grad.x, fit.ddy - grad.y));
    out.value_error.push_back(std::abs(fit.value - u0));
  }
  out.gradient_slope = loglog_slope(out.h, out.gradient_error);
  out.value_slope = loglog_slope(out.h, out.value_error);
  return out;
}

}  // namespace bfecc
