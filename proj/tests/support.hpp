#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "bfecc/analysis.hpp"
#include "bfecc/grid.hpp"
#include "bfecc/schemes.hpp"

namespace testing_support {

using cd = std::complex<double>;
using bfecc::FieldState1;
using bfecc::FieldState2;
constexpr double pi = std::numbers::pi;

inline FieldState1 random_state1(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldState1 s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.E[k] = u(rng);
    s.H[k] = u(rng);
  }
  return s;
}

inline FieldState2 random_state2(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldState2 s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.Hx[k] = u(rng);
    s.Hy[k] = u(rng);
    s.Ez[k] = u(rng);
  }
  return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const FieldState2& a, const FieldState2& b) {
  return std::max({max_abs_diff(a.Hx, b.Hx), max_abs_diff(a.Hy, b.Hy), max_abs_diff(a.Ez, b.Ez)});
}

inline double max_abs(const FieldState2& a) {
  return std::max({max_abs(a.Hx), max_abs(a.Hy), max_abs(a.Ez)});
}

inline double max_abs_diff(const FieldState1& a, const FieldState1& b) {
  return std::max(max_abs_diff(a.E, b.E), max_abs_diff(a.H, b.H));
}

/// Empirical symbol of a real linear 1D step on an n-point periodic grid at
/// wave index k: column m is the DFT coefficient of the output when the input
/// is the complex mode e_m exp(i xi j), applied via real and imaginary parts.
inline bfecc::SymbolMatrix empirical_symbol_1d(
    const std::function<void(const FieldState1&, FieldState1&)>& step, int n, int k) {
  const double xi = 2.0 * pi * k / n;
  bfecc::SymbolMatrix q(2, 2);
  for (int m = 0; m < 2; ++m) {
    FieldState1 re(n), im(n), ore, oim;
    for (int j = 0; j < n; ++j) {
      auto& r = m == 0 ? re.E : re.H;
      auto& i = m == 0 ? im.E : im.H;
      r[j] = std::cos(xi * j);
      i[j] = std::sin(xi * j);
    }
    step(re, ore);
    step(im, oim);
    for (int c = 0; c < 2; ++c) {
      const auto& a = c == 0 ? ore.E : ore.H;
      const auto& b = c == 0 ? oim.E : oim.H;
      cd acc = 0.0;
      for (int j = 0; j < n; ++j) acc += cd(a[j], b[j]) * std::exp(cd(0.0, -xi * j));
      q(c, m) = acc / static_cast<double>(n);
    }
  }
  return q;
}

/// 2D analogue on an n x n periodic grid; components ordered (Hx, Hy, Ez).
inline bfecc::SymbolMatrix empirical_symbol_2d(
    const std::function<void(const FieldState2&, FieldState2&)>& step, const bfecc::Grid2& g,
    int k, int l) {
  const int n = g.nx();
  const double xx = 2.0 * pi * k / n;
  const double xy = 2.0 * pi * l / g.ny();
  auto comp = [](FieldState2& s, int c) -> std::vector<double>& {
    return c == 0 ? s.Hx : (c == 1 ? s.Hy : s.Ez);
  };
  bfecc::SymbolMatrix q(3, 3);
  for (int m = 0; m < 3; ++m) {
    FieldState2 re(g.size()), im(g.size()), ore, oim;
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        const double ph = xx * i + xy * j;
        comp(re, m)[g.index(i, j)] = std::cos(ph);
        comp(im, m)[g.index(i, j)] = std::sin(ph);
      }
    step(re, ore);
    step(im, oim);
    for (int c = 0; c < 3; ++c) {
      cd acc = 0.0;
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
          const std::size_t p = g.index(i, j);
          acc += cd(comp(ore, c)[p], comp(oim, c)[p]) * std::exp(cd(0.0, -(xx * i + xy * j)));
        }
      q(c, m) = acc / static_cast<double>(g.size());
    }
  }
  return q;
}

}  // namespace testing_support
