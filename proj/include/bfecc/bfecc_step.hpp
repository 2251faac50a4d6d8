#pragma once

#include <functional>
#include <memory>

#include "bfecc/schemes.hpp"

namespace bfecc {

template <class State>
struct BfeccScratch {
  State a;
  State b;
};

/// One BFECC step built from three operator applications:
///   a = fwd(u), b = bwd(a), out = last(u + (u - b) / 2).
/// `last` is the forward operator plus whatever sources belong to the step.
template <class State, class Fwd, class Bwd, class Last>
void bfecc_apply(const State& u, Fwd&& fwd, Bwd&& bwd, Last&& last, State& out,
                 BfeccScratch<State>& scratch) {
  fwd(u, scratch.a);
  bwd(scratch.a, scratch.b);
  // u + (u - b) / 2 rather than 1.5u - 0.5b: exact when b == u.
  combine(1.0, u, -1.0, scratch.b, scratch.a);
  combine(1.0, u, 0.5, scratch.a, scratch.a);
  last(scratch.a, out);
}

/// Additive source evaluated once per step at time t, applied after the
/// third operator application only. `compensated` is that application's input.
template <class State>
using SourceHook = std::function<void(double t, const State& compensated, State& out)>;

class BfeccStep1 {
 public:
  BfeccStep1(SchemeSpec forward, double dx) : fwd_(forward), bwd_(forward.reversed()), dx_(dx) {
    forward.validate();
  }

  void set_source(SourceHook<FieldState1> hook) { source_ = std::move(hook); }

  void step(const FieldState1& u, FieldState1& out, double t = 0.0) {
    bfecc_apply(
        u, [&](const FieldState1& in, FieldState1& o) { step_1d(fwd_, in, dx_, o); },
        [&](const FieldState1& in, FieldState1& o) { step_1d(bwd_, in, dx_, o); },
        [&](const FieldState1& in, FieldState1& o) {
          step_1d(fwd_, in, dx_, o);
          if (source_) source_(t, in, o);
        },
        out, scratch_);
  }

 private:
  SchemeSpec fwd_;
  SchemeSpec bwd_;
  double dx_;
  SourceHook<FieldState1> source_;
  BfeccScratch<FieldState1> scratch_;
};

class BfeccStep2 {
 public:
  BfeccStep2(std::shared_ptr<const Operator2> op, double dt) : op_(std::move(op)), dt_(dt) {}

  void set_source(SourceHook<FieldState2> hook) { source_ = std::move(hook); }

  void step(const FieldState2& u, FieldState2& out, double t = 0.0) {
    bfecc_apply(
        u, [&](const FieldState2& in, FieldState2& o) { op_->apply(in, dt_, o); },
        [&](const FieldState2& in, FieldState2& o) { op_->apply(in, -dt_, o); },
        [&](const FieldState2& in, FieldState2& o) {
          op_->apply(in, dt_, o);
          if (source_) source_(t, in, o);
        },
        out, scratch_);
  }

  const Operator2& op() const { return *op_; }
  double dt() const { return dt_; }

 private:
  std::shared_ptr<const Operator2> op_;
  double dt_;
  SourceHook<FieldState2> source_;
  BfeccScratch<FieldState2> scratch_;
};

}  // namespace bfecc
