#include "bfecc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bfecc/error.hpp"
#include "bfecc/lsq.hpp"

namespace bfecc {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void check_dims(int dims) { require(dims == 1 || dims == 2, "symbols exist for dims 1 and 2"); }

double value_weight(SchemeKind kind, double theta) {
  switch (kind) {
    case SchemeKind::ls_cd: return 0.0;
    case SchemeKind::ls_theta: return 0.8;
    default: return averaging_weight(kind, theta);
  }
}

}  // namespace

SymbolMatrix symbol(SchemeKind kind, int dims, WaveAngles xi, MeshRatios lambda,
                    Direction direction, double theta) {
  check_dims(dims);
  const double w = value_weight(kind, theta);
  SymbolMatrix q;
  if (dims == 1) {
    const double q0 = 1.0 - w + w * std::cos(xi.x);
    const double s = lambda.x * std::sin(xi.x);
    q.resize(2, 2);
    q << q0, I * s, I * s, q0;
  } else {
    const double q0 = 1.0 - w + 0.5 * w * (std::cos(xi.x) + std::cos(xi.y));
    const double sx = lambda.x * std::sin(xi.x);
    const double sy = lambda.y * std::sin(xi.y);
    q = SymbolMatrix::Identity(3, 3) * q0;
    q(0, 2) = -I * sy;
    q(2, 0) = -I * sy;
    q(1, 2) = I * sx;
    q(2, 1) = I * sx;
  }
  if (direction == Direction::backward) q = q.conjugate().eval();
  return q;
}

SymbolMatrix exact_propagator(int dims, WaveAngles xi, MeshRatios lambda) {
  check_dims(dims);
  if (dims == 1) {
    const double a = lambda.x * xi.x;
    SymbolMatrix e(2, 2);
    e << std::cos(a), I * std::sin(a), I * std::sin(a), std::cos(a);
    return e;
  }
  // exp(iG) with G real symmetric and G^3 = alpha^2 G.
  const double ax = lambda.x * xi.x;
  const double ay = lambda.y * xi.y;
  const double alpha = std::hypot(ax, ay);
  SymbolMatrix e = SymbolMatrix::Identity(3, 3);
  if (alpha == 0.0) return e;
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 2) = g(2, 0) = -ay;
  g(1, 2) = g(2, 1) = ax;
  const Eigen::Matrix3d g2 = g * g;
  e += (I * (std::sin(alpha) / alpha)) * g.cast<cd>() +
       ((std::cos(alpha) - 1.0) / (alpha * alpha)) * g2.cast<cd>();
  return e;
}

SymbolMatrix bfecc_symbol(const SymbolMatrix& q, const SymbolMatrix& qstar) {
  require(q.rows() == q.cols() && q.rows() == qstar.rows() && q.cols() == qstar.cols(),
          "bfecc_symbol: shape mismatch");
  const auto n = q.rows();
  const SymbolMatrix id = SymbolMatrix::Identity(n, n);
  return q * (id + 0.5 * (id - qstar * q));
}

SymbolMatrix bfecc_symbol(SchemeKind kind, int dims, WaveAngles xi, MeshRatios lambda,
                          double theta) {
  return bfecc_symbol(symbol(kind, dims, xi, lambda, Direction::forward, theta),
                      symbol(kind, dims, xi, lambda, Direction::backward, theta));
}

std::vector<std::complex<double>> eigenvalues(const SymbolMatrix& q) {
  Eigen::ComplexEigenSolver<SymbolMatrix> es(q, false);
  if (es.info() != Eigen::Success) fail(Errc::domain_error, "eigenvalue solver did not converge");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const SymbolMatrix& q) {
  double r = 0.0;
  for (const auto& v : eigenvalues(q)) r = std::max(r, std::abs(v));
  return r;
}

ScanResult scan_modes(SchemeKind kind, int dims, MeshRatios lambda, int samples, double theta,
                      bool wrap_bfecc) {
  check_dims(dims);
  require(samples >= 1, "scan needs at least one sample");
  ScanResult out;
  out.max_radius = -1.0;
  const int ly = dims == 2 ? samples : 1;
  const double step = 2.0 * std::numbers::pi / samples;
  for (int k = 0; k < samples; ++k) {
    for (int l = 0; l < ly; ++l) {
      const WaveAngles xi{k * step, l * step};
      const SymbolMatrix q = wrap_bfecc ? bfecc_symbol(kind, dims, xi, lambda, theta)
                                        : symbol(kind, dims, xi, lambda, Direction::forward, theta);
      const double r = spectral_radius(q);
      out.entries.push_back({k, l, r});
      if (r > out.max_radius) {
        out.max_radius = r;
        out.k_max = k;
        out.l_max = l;
      }
    }
  }
  return out;
}

ScanResult stability_scan(SchemeKind kind, int dims, MeshRatios lambda, int samples,
                          double theta, bool wrap_bfecc) {
  require(samples >= 64, "stability_scan needs at least 64 samples per axis");
  return scan_modes(kind, dims, lambda, samples, theta, wrap_bfecc);
}

double theta_cfl_number(double theta, double tol, int samples) {
  auto stable = [&](double lam) {
    return stability_scan(SchemeKind::theta, 1, {lam, 0.0}, samples, theta).max_radius <=
           1.0 + 1e-12;
  };
  double lo = 1.5;
  double hi = 2.5;
  require(stable(lo) && !stable(hi), "theta CFL number outside the search bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

double cfl_bound(SchemeKind kind, const std::vector<double>& spacings, double theta) {
  require(!spacings.empty() && spacings.size() <= 3, "cfl_bound: 1 to 3 spacings");
  double inv = 0.0;
  double hmin = spacings.front();
  for (double h : spacings) {
    require(h > 0.0, "spacings must be positive");
    inv += 1.0 / (h * h);
    hmin = std::min(hmin, h);
  }
  const double root = std::sqrt(inv);
  const std::size_t d = spacings.size();
  const double lf_cap = d == 2 ? std::sqrt(3.5) * hmin : std::sqrt(3.0) * hmin;

  switch (kind) {
    case SchemeKind::cd:
    case SchemeKind::ls_cd: return std::sqrt(3.0) / root;
    case SchemeKind::lf:
      if (d == 1) return 2.0 * spacings[0];
      return std::min(2.0 / root, lf_cap);
    case SchemeKind::theta:
    case SchemeKind::ls_theta: {
      const double c = theta_cfl_number(kind == SchemeKind::ls_theta ? 0.8 : theta);
      if (d == 1) return c * spacings[0];
      return std::min(c / root, lf_cap);
    }
  }
  return 0.0;
}

OrderFit accuracy_order(SchemeKind kind, bool wrap_bfecc, int dims, double lambda, double theta) {
  check_dims(dims);
  OrderFit fit;
  for (int n = 16; n <= 256; n *= 2) {
    const double h = 1.0 / n;
    const double xi = 2.0 * std::numbers::pi * h;
    const WaveAngles angles{xi, dims == 2 ? xi : 0.0};
    const MeshRatios ratios{lambda, dims == 2 ? lambda : 0.0};
    const SymbolMatrix q = wrap_bfecc
                               ? bfecc_symbol(kind, dims, angles, ratios, theta)
                               : symbol(kind, dims, angles, ratios, Direction::forward, theta);
    fit.h.push_back(h);
    fit.error.push_back((q - exact_propagator(dims, angles, ratios)).norm());
  }
  fit.order = loglog_slope(fit.h, fit.error);
  return fit;
}

double phase_speed(double lambda, double kh) {
  require(lambda > 0.0 && kh != 0.0, "phase_speed needs lambda > 0 and kh != 0");
  const double s = std::sin(kh);
  const double arg = lambda * (1.0 - 0.5 * lambda * lambda * s * s) * s;
  if (!(std::abs(arg) <= 1.0))
    fail(Errc::domain_error, "arcsin argument outside [-1, 1]: mode is not propagating");
  return std::asin(arg) / (lambda * kh);
}

double phase_speed_exact(double lambda, double kh) {
  require(lambda > 0.0 && kh != 0.0, "phase_speed_exact needs lambda > 0 and kh != 0");
  const double s = std::sin(kh);
  const double g = 1.0 - 0.5 * lambda * lambda * s * s;
  const std::complex<double> mu = g * std::complex<double>(1.0, lambda * s);
  return std::arg(mu) / (lambda * kh);
}

}  // namespace bfecc
