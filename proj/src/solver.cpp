#include "bfecc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bfecc/error.hpp"

namespace bfecc {

MaxwellSolver2::MaxwellSolver2(std::shared_ptr<const Grid2> grid, SchemeKind kind, double theta,
                               double dt, std::shared_ptr<const Material> material,
                               bool use_bfecc, LsqMode lsq)
    : grid_(std::move(grid)), dt_(dt), bfecc_(use_bfecc), material_(std::move(material)) {
  require(grid_ != nullptr, "solver needs a grid");
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  if (material_) material_->validate(grid_->size());
  op_ = std::make_shared<Operator2>(grid_, kind, theta, lsq);
  state_ = FieldState2(grid_->size());
  state_.material = material_;
}

void MaxwellSolver2::set_state(FieldState2 state, double t) {
  require(state.size() == grid_->size() && state.Hx.size() == grid_->size() &&
              state.Hy.size() == grid_->size(),
          "state size does not match the grid");
  state_ = std::move(state);
  state_.material = material_;
  start_ = time_ = t;
  steps_ = 0;
}

void MaxwellSolver2::linear_step(const FieldState2& in, FieldState2& out) {
  const DerivativeScaling scaling = pml_ ? pml_->scaling() : DerivativeScaling{};
  auto fwd = [&](const FieldState2& a, FieldState2& b) { op_->apply(a, dt_, b, scaling); };
  auto bwd = [&](const FieldState2& a, FieldState2& b) { op_->apply(a, -dt_, b, scaling); };
  if (bfecc_)
    bfecc_apply(in, fwd, bwd, fwd, out, corr_scratch_);
  else
    fwd(in, out);
}

void MaxwellSolver2::step() {
  const DerivativeScaling scaling = pml_ ? pml_->scaling() : DerivativeScaling{};
  auto fwd = [&](const FieldState2& a, FieldState2& b) { op_->apply(a, dt_, b, scaling); };
  auto bwd = [&](const FieldState2& a, FieldState2& b) { op_->apply(a, -dt_, b, scaling); };
  auto last = [&](const FieldState2& a, FieldState2& b) {
    if (pml_)
      pml_step(*op_, dt_, a, *pml_, b);
    else
      op_->apply(a, dt_, b);
  };

  if (tfsf_) {
    tfsf_->correction(
        time_, material_, [&](const FieldState2& a, FieldState2& b) { linear_step(a, b); },
        corr_);
  }
  if (bfecc_)
    bfecc_apply(state_, fwd, bwd, last, next_, scratch_);
  else
    last(state_, next_);
  if (tfsf_) combine(1.0, next_, 1.0, corr_, next_);

  std::swap(state_, next_);
  state_.material = material_;
  ++steps_;
  time_ = start_ + static_cast<double>(steps_) * dt_;
}

void MaxwellSolver2::advance(long count) {
  for (long s = 0; s < count; ++s) step();
}

double MaxwellSolver2::sup_norm() const {
  double m = 0.0;
  for (std::size_t k = 0; k < state_.size(); ++k) {
    m = std::max({m, std::abs(state_.Hx[k]), std::abs(state_.Hy[k]), std::abs(state_.Ez[k])});
    if (!std::isfinite(state_.Ez[k]) || !std::isfinite(state_.Hx[k]) ||
        !std::isfinite(state_.Hy[k]))
      return std::numeric_limits<double>::infinity();
  }
  return m;
}

}  // namespace bfecc
