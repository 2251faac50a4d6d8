#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bfecc/schemes.hpp"

namespace bfecc {

using SymbolMatrix = Eigen::MatrixXcd;

/// Phase angles xi = 2*pi*k*h per axis (xi_y unused in 1D).
struct WaveAngles {
  double x = 0.0;
  double y = 0.0;
};

/// Mesh ratios dt/dx, dt/dy (y unused in 1D).
struct MeshRatios {
  double x = 0.0;
  double y = 0.0;
};

/// Closed-form Fourier symbol of a uniform-grid scheme; 2x2 for (E, H) in 1D
/// and 3x3 for (Hx, Hy, Ez) in 2D. Least-squares kinds are taken on a uniform
/// grid, where they coincide with cd and theta(0.8).
SymbolMatrix symbol(SchemeKind kind, int dims, WaveAngles xi, MeshRatios lambda,
                    Direction direction = Direction::forward, double theta = 0.0);

/// exp(dt P(ik)) for the free-space system.
SymbolMatrix exact_propagator(int dims, WaveAngles xi, MeshRatios lambda);

/// Q_L (I + (I - Q* Q_L) / 2).
SymbolMatrix bfecc_symbol(const SymbolMatrix& q, const SymbolMatrix& qstar);

/// Symbol of BFECC wrapped around `kind`.
SymbolMatrix bfecc_symbol(SchemeKind kind, int dims, WaveAngles xi, MeshRatios lambda,
                          double theta = 0.0);

std::vector<std::complex<double>> eigenvalues(const SymbolMatrix& q);
double spectral_radius(const SymbolMatrix& q);

struct ScanEntry {
  int k = 0;
  int l = 0;
  double radius = 0.0;
};

struct ScanResult {
  double max_radius = 0.0;
  int k_max = 0;
  int l_max = 0;
  std::vector<ScanEntry> entries;
};

/// Spectral radius of the BFECC symbol (or of the plain scheme when
/// `wrap_bfecc` is false) at xi = 2*pi*k/samples for k = 0..samples-1 per axis.
ScanResult scan_modes(SchemeKind kind, int dims, MeshRatios lambda, int samples,
                      double theta = 0.0, bool wrap_bfecc = true);

/// scan_modes with the resolution requirement samples >= 64.
ScanResult stability_scan(SchemeKind kind, int dims, MeshRatios lambda, int samples,
                          double theta = 0.0, bool wrap_bfecc = true);

/// Largest stable 1D mesh ratio of BFECC around the theta scheme, by
/// bisection to `tol` on stability_scan.
double theta_cfl_number(double theta, double tol = 1e-6, int samples = 256);

/// Largest stable time step of BFECC around `kind` for the given spacings
/// (1 to 3 entries).
double cfl_bound(SchemeKind kind, const std::vector<double>& spacings, double theta = 0.0);

struct OrderFit {
  double order = 0.0;
  std::vector<double> h;
  std::vector<double> error;
};

/// Fits ||Q(k, h) - exp(dt P)|| = C h^p at k = 1 over h = 1/16 .. 1/256.
OrderFit accuracy_order(SchemeKind kind, bool wrap_bfecc, int dims, double lambda,
                        double theta = 0.0);

/// Normalized phase speed of 1D BFECC-cd from
/// sin(w dt) = lambda (1 - lambda^2 sin^2(kh) / 2) sin(kh).
/// Throws Errc::domain_error when the arcsin argument leaves [-1, 1].
double phase_speed(double lambda, double kh);

/// Phase speed from the argument of the eigenvalue of the BFECC symbol,
/// i.e. the phase a propagated mode actually advances per step.
double phase_speed_exact(double lambda, double kh);

}  // namespace bfecc
