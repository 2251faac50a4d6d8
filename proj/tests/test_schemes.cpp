#include <gtest/gtest.h>

#include "bfecc/analysis.hpp"
#include "bfecc/error.hpp"
#include "bfecc/schemes.hpp"
#include "support.hpp"

using namespace bfecc;
using namespace testing_support;

namespace {

const Rect kUnit{0.0, 0.0, 1.0, 1.0};

std::shared_ptr<const Grid2> periodic_grid(int n) {
  return std::make_shared<const Grid2>(build_uniform(n, n, kUnit, Boundary::periodic));
}

std::shared_ptr<const Grid2> shifted_grid(int n) {
  return std::make_shared<const Grid2>(point_shift(
      build_uniform(n, n, kUnit, Boundary::periodic), Curve::circle({0.5, 0.5}, 0.24)));
}

double max_entry(const SymbolMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Step1d, ConstantsAreFixedPoints) {
  for (SchemeKind kind : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta}) {
    FieldState1 s(32);
    std::fill(s.E.begin(), s.E.end(), 1.25);
    std::fill(s.H.begin(), s.H.end(), -0.5);
    const FieldState1 out = step_1d({kind, 0.3, 0.01}, s, 1.0 / 32);
    EXPECT_LE(max_abs_diff(out, s), 1e-15) << to_string(kind);
  }
}

TEST(Step1d, ModesMultiplyBySymbol) {
  const int n = 64;
  const double lambda = 0.38;
  const double dx = 1.0 / n;
  for (SchemeKind kind : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta}) {
    const SchemeSpec spec{kind, 0.3, lambda * dx};
    for (int k : {0, 1, 5, 16, 31, 32}) {
      const SymbolMatrix emp = empirical_symbol_1d(
          [&](const FieldState1& in, FieldState1& out) { step_1d(spec, in, dx, out); }, n, k);
      const SymbolMatrix ref =
          symbol(kind, 1, {2 * pi * k / n, 0.0}, {lambda, 0.0}, Direction::forward, 0.3);
      EXPECT_LE(max_entry(emp - ref), 1e-13) << to_string(kind) << " k=" << k;
    }
  }
}

TEST(Step1d, CdSineModeMatchesPrintedSymbol) {
  const int n = 64;
  const double lambda = 0.38;
  FieldState1 s(n);
  for (int j = 0; j < n; ++j) s.E[j] = s.H[j] = std::sin(2 * pi * j / n);
  const FieldState1 out = step_1d({SchemeKind::cd, 0.0, lambda / n}, s, 1.0 / n);
  // sin -> sin + lambda sin(2 pi h) cos: the imaginary unit of the symbol
  // turns into a quarter-period shift.
  const double sh = lambda * std::sin(2 * pi / n);
  for (int j = 0; j < n; ++j) {
    const double expect = std::sin(2 * pi * j / n) + sh * std::cos(2 * pi * j / n);
    EXPECT_NEAR(out.E[j], expect, 1e-15);
    EXPECT_NEAR(out.H[j], expect, 1e-15);
  }
}

TEST(Step1d, ForwardThenBackwardMatchesSymbolProduct) {
  const int n = 64;
  const double lambda = 0.38;
  const SchemeSpec fwd{SchemeKind::cd, 0.0, lambda / n};
  for (int k : {1, 7, 16}) {
    const SymbolMatrix emp = empirical_symbol_1d(
        [&](const FieldState1& in, FieldState1& out) {
          const FieldState1 a = step_1d(fwd, in, 1.0 / n);
          step_1d(fwd.reversed(), a, 1.0 / n, out);
        },
        n, k);
    const WaveAngles xi{2 * pi * k / n, 0.0};
    const SymbolMatrix q = symbol(SchemeKind::cd, 1, xi, {lambda, 0.0});
    const SymbolMatrix qs = symbol(SchemeKind::cd, 1, xi, {lambda, 0.0}, Direction::backward);
    EXPECT_LE(max_entry(emp - qs * q), 1e-13);
    // Q*Q = I + Y^2 is diagonal with entry 1 + lambda^2 sin^2.
    const double s = lambda * std::sin(xi.x);
    EXPECT_NEAR(emp(0, 0).real(), 1 + s * s, 1e-13);
    EXPECT_NEAR(std::abs(emp(0, 1)), 0.0, 1e-13);
  }
}

TEST(Step1d, RiemannInvariantsAdvectIndependently) {
  // With w = E + H and v = E - H, the cd step is two decoupled scalar
  // central-difference advections with opposite speeds.
  std::mt19937 rng(5);
  const int n = 40;
  const double lam = 0.7;
  const FieldState1 s = random_state1(n, rng);
  const FieldState1 out = step_1d({SchemeKind::cd, 0.0, lam / n}, s, 1.0 / n);
  for (int j = 0; j < n; ++j) {
    const int l = (j + n - 1) % n, r = (j + 1) % n;
    const double w = s.E[j] + s.H[j] + 0.5 * lam * (s.E[r] + s.H[r] - s.E[l] - s.H[l]);
    const double v = s.E[j] - s.H[j] - 0.5 * lam * (s.E[r] - s.H[r] - s.E[l] + s.H[l]);
    EXPECT_NEAR(out.E[j] + out.H[j], w, 1e-14);
    EXPECT_NEAR(out.E[j] - out.H[j], v, 1e-14);
  }
}

TEST(Step1d, ThetaInterpolatesCdAndLf) {
  std::mt19937 rng(9);
  const int n = 32;
  const FieldState1 s = random_state1(n, rng);
  const double dt = 0.4 / n;
  const double theta = 0.35;
  const FieldState1 a = step_1d({SchemeKind::cd, 0.0, dt}, s, 1.0 / n);
  const FieldState1 b = step_1d({SchemeKind::lf, 0.0, dt}, s, 1.0 / n);
  const FieldState1 t = step_1d({SchemeKind::theta, theta, dt}, s, 1.0 / n);
  FieldState1 mix;
  combine(1 - theta, a, theta, b, mix);
  EXPECT_LE(max_abs_diff(t, mix), 1e-15);
}

TEST(Step1d, MaterialDividesEByEpsAndHByMu) {
  std::mt19937 rng(1);
  const int n = 32;
  FieldState1 s = random_state1(n, rng);
  const double dt = 0.5 / n;
  const FieldState1 vac = step_1d({SchemeKind::cd, 0.0, dt}, s, 1.0 / n);
  s.material = Material::uniform(n, 2.0, 4.0);
  const FieldState1 mat = step_1d({SchemeKind::cd, 0.0, dt}, s, 1.0 / n);
  for (int j = 0; j < n; ++j) {
    EXPECT_NEAR(mat.E[j] - s.E[j], (vac.E[j] - s.E[j]) / 2.0, 1e-15);
    EXPECT_NEAR(mat.H[j] - s.H[j], (vac.H[j] - s.H[j]) / 4.0, 1e-15);
  }
}

TEST(Step1d, RejectsBadInput) {
  FieldState1 s(8);
  EXPECT_THROW(step_1d({SchemeKind::cd, 0.0, 0.0}, s, 0.1), Error);
  EXPECT_THROW(step_1d({SchemeKind::cd, 0.0, 0.01}, s, -0.1), Error);
  EXPECT_THROW(step_1d({SchemeKind::theta, 1.5, 0.01}, s, 0.1), Error);
  try {
    step_1d({SchemeKind::ls_cd, 0.0, 0.01}, s, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::scheme_mismatch);
  }
}

TEST(Operator2, ModesMultiplyBySymbol) {
  const int n = 16;
  const auto g = periodic_grid(n);
  const double lambda = 0.6;
  for (SchemeKind kind : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta}) {
    const Operator2 op(g, kind, 0.4);
    for (auto [k, l] : {std::pair{0, 0}, {1, 0}, {0, 3}, {3, 5}, {8, 8}, {15, 2}}) {
      const SymbolMatrix emp = empirical_symbol_2d(
          [&](const FieldState2& in, FieldState2& out) { op.apply(in, lambda / n, out); }, *g, k,
          l);
      const SymbolMatrix ref = symbol(kind, 2, {2 * pi * k / n, 2 * pi * l / n},
                                      {lambda, lambda}, Direction::forward, 0.4);
      EXPECT_LE(max_entry(emp - ref), 1e-13) << to_string(kind) << " " << k << "," << l;
    }
  }
}

TEST(Operator2, CdPlaneWaveMode) {
  const int n = 32;
  const auto g = periodic_grid(n);
  FieldState2 s(g->size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.Ez[g->index(i, j)] = std::sin(2 * pi * i / n);
      s.Hy[g->index(i, j)] = -std::sin(2 * pi * i / n);
    }
  const double lam = 0.5;
  const FieldState2 out = step_2d({SchemeKind::cd, 0.0, lam / n}, s, g);
  const double sh = lam * std::sin(2 * pi / n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t k = g->index(i, j);
      const double c = std::cos(2 * pi * i / n);
      EXPECT_NEAR(out.Ez[k], s.Ez[k] - sh * c, 1e-15);
      EXPECT_NEAR(out.Hy[k], s.Hy[k] + sh * c, 1e-15);
      EXPECT_EQ(out.Hx[k], 0.0);
    }
}

TEST(Operator2, LeastSquaresMatchUniformSchemes) {
  std::mt19937 rng(42);
  const auto g = periodic_grid(24);
  const FieldState2 s = random_state2(g->size(), rng);
  const double dt = 0.3 / 24;
  const std::pair<SchemeKind, Operator2> pairs[] = {
      {SchemeKind::ls_cd, Operator2(g, SchemeKind::cd)},
      {SchemeKind::ls_theta, Operator2(g, SchemeKind::theta, 0.8)}};
  for (const auto& [ls, uniform] : pairs) {
    FieldState2 a, b;
    Operator2(g, ls).apply(s, dt, a);
    uniform.apply(s, dt, b);
    EXPECT_LE(max_abs_diff(a, b), 1e-13 * max_abs(b)) << to_string(ls);
  }
}

TEST(Operator2, IsLinear) {
  std::mt19937 rng(3);
  const auto g = shifted_grid(20);
  const Operator2 op(g, SchemeKind::ls_theta);
  const FieldState2 x = random_state2(g->size(), rng), y = random_state2(g->size(), rng);
  FieldState2 xy, lx, ly, lxy, mix;
  combine(2.0, x, -3.0, y, xy);
  op.apply(x, 0.01, lx);
  op.apply(y, 0.01, ly);
  op.apply(xy, 0.01, lxy);
  combine(2.0, lx, -3.0, ly, mix);
  EXPECT_LE(max_abs_diff(lxy, mix), 1e-13);
}

TEST(Operator2, BackwardIsNegatedStep) {
  std::mt19937 rng(4);
  const auto g = periodic_grid(16);
  const FieldState2 s = random_state2(g->size(), rng);
  const SchemeSpec spec{SchemeKind::lf, 0.0, 0.02};
  const FieldState2 back = step_2d(spec.reversed(), s, g);
  FieldState2 neg;
  Operator2(g, SchemeKind::lf).apply(s, -0.02, neg);
  EXPECT_EQ(max_abs_diff(back, neg), 0.0);
}

TEST(Operator2, BackwardSymbolIsConjugate) {
  const int n = 8;
  const auto g = periodic_grid(n);
  const Operator2 op(g, SchemeKind::theta, 0.5);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      auto run = [&](double dt) {
        return empirical_symbol_2d(
            [&](const FieldState2& in, FieldState2& out) { op.apply(in, dt, out); }, *g, k, l);
      };
      EXPECT_LE(max_entry(run(-0.05) - run(0.05).conjugate()), 1e-13);
    }
}

TEST(Operator2, MaterialScalesUpdates) {
  std::mt19937 rng(8);
  const auto g = periodic_grid(12);
  FieldState2 s = random_state2(g->size(), rng);
  const Operator2 op(g, SchemeKind::cd);
  FieldState2 vac, mat;
  op.apply(s, 0.03, vac);
  s.material = Material::uniform(g->size(), 2.25, 0.5);
  op.apply(s, 0.03, mat);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_NEAR(mat.Ez[k] - s.Ez[k], (vac.Ez[k] - s.Ez[k]) / 2.25, 1e-15);
    EXPECT_NEAR(mat.Hx[k] - s.Hx[k], (vac.Hx[k] - s.Hx[k]) / 0.5, 1e-15);
    EXPECT_NEAR(mat.Hy[k] - s.Hy[k], (vac.Hy[k] - s.Hy[k]) / 0.5, 1e-15);
  }
}

TEST(Operator2, UniformKindsRefuseDeformedGrids) {
  const auto g = shifted_grid(20);
  for (SchemeKind kind : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta}) {
    try {
      Operator2 op(g, kind, 0.5);
      FAIL() << to_string(kind);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::scheme_mismatch);
    }
  }
  EXPECT_NO_THROW(Operator2(g, SchemeKind::ls_cd));
  EXPECT_THROW(averaging_weight(SchemeKind::ls_theta, 0.0), Error);
}

TEST(Operator2, CachedAndRecomputedWeightsAgree) {
  std::mt19937 rng(6);
  const auto g = shifted_grid(20);
  const FieldState2 s = random_state2(g->size(), rng);
  FieldState2 a, b;
  Operator2(g, SchemeKind::ls_theta, 0.0, LsqMode::cached).apply(s, 0.02, a);
  Operator2(g, SchemeKind::ls_theta, 0.0, LsqMode::recompute).apply(s, 0.02, b);
  EXPECT_LE(max_abs_diff(a, b), 1e-13);
}

TEST(Operator2, LeastSquaresExactOnLinearFields) {
  // Ez = x: the update adds dt to Hy everywhere, even on the shifted grid.
  const auto g = shifted_grid(20);
  FieldState2 s(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) s.Ez[k] = g->point(k).x;
  FieldState2 out;
  Operator2(g, SchemeKind::ls_cd).apply(s, 0.01, out);
  for (int i = 1; i < 19; ++i)
    for (int j = 1; j < 19; ++j) EXPECT_NEAR(out.Hy[g->index(i, j)], 0.01, 1e-13);
}

TEST(Operator2, BoundedEdgesKeepTheirValues) {
  std::mt19937 rng(2);
  const auto g = std::make_shared<const Grid2>(build_uniform(10, 10, kUnit, Boundary::bounded));
  const FieldState2 s = random_state2(g->size(), rng);
  FieldState2 out;
  Operator2 op(g, SchemeKind::cd);
  op.apply(s, 0.05, out);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const std::size_t k = g->index(i, j);
      if (g->is_interior(i, j)) {
        EXPECT_TRUE(op.active(k));
        continue;
      }
      EXPECT_FALSE(op.active(k));
      EXPECT_EQ(out.Ez[k], s.Ez[k]);
      EXPECT_EQ(out.Hx[k], s.Hx[k]);
      EXPECT_EQ(out.Hy[k], s.Hy[k]);
    }
}

TEST(SchemeNames, RoundTrip) {
  for (SchemeKind kind : {SchemeKind::cd, SchemeKind::lf, SchemeKind::theta, SchemeKind::ls_cd,
                          SchemeKind::ls_theta})
    EXPECT_EQ(parse_scheme_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_scheme_kind("upwind"), Error);
}
