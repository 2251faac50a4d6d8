#pragma once

#include <memory>
#include <optional>

#include "bfecc/bfecc_step.hpp"
#include "bfecc/pml.hpp"
#include "bfecc/schemes.hpp"

namespace bfecc {

/// 2D TMz time stepper: BFECC (or the bare scheme) with optional absorbing
/// layers and TF/SF plane-wave injection.
class MaxwellSolver2 {
 public:
  MaxwellSolver2(std::shared_ptr<const Grid2> grid, SchemeKind kind, double theta, double dt,
                 std::shared_ptr<const Material> material = nullptr, bool use_bfecc = true,
                 LsqMode lsq = LsqMode::cached);

  void set_pml(PmlState pml) { pml_ = std::move(pml); }
  void set_tfsf(const TfsfSource& source) { tfsf_ = source; }
  void set_state(FieldState2 state, double t = 0.0);

  const FieldState2& state() const { return state_; }
  const Grid2& grid() const { return *grid_; }
  const Operator2& op() const { return *op_; }
  const std::optional<PmlState>& pml() const { return pml_; }
  double time() const { return time_; }
  double dt() const { return dt_; }
  long steps() const { return steps_; }

  void step();
  void advance(long count);
  double sup_norm() const;

 private:
  // Full step without history terms or injection; the TF/SF correction uses it.
  void linear_step(const FieldState2& in, FieldState2& out);

  std::shared_ptr<const Grid2> grid_;
  std::shared_ptr<const Operator2> op_;
  double dt_;
  bool bfecc_;
  std::shared_ptr<const Material> material_;
  std::optional<PmlState> pml_;
  std::optional<TfsfSource> tfsf_;
  FieldState2 state_;
  FieldState2 next_;
  FieldState2 corr_;
  BfeccScratch<FieldState2> scratch_;
  BfeccScratch<FieldState2> corr_scratch_;
  double start_ = 0.0;
  double time_ = 0.0;
  long steps_ = 0;
};

}  // namespace bfecc
