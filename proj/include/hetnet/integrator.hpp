#pragma once

#include "hetnet/linalg.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace hetnet {

using Rhs = std::function<Vec4(const Vec4&)>;

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double h0 = 0.0;          // initial step; 0 picks one from the field
  double h_min = 1e-14;     // relative to max(1, |t|)
  double h_max = 0.0;       // 0 means unbounded
  std::size_t max_steps = 20'000'000;
  bool record = true;       // keep every accepted step in the trajectory
};

/// One accepted step with its 4th-order continuous extension.
class DenseStep {
 public:
  double t0 = 0.0, t1 = 0.0;
  Vec4 y0 = Vec4::Zero(), y1 = Vec4::Zero();

  Vec4 operator()(double t) const;
  double h() const { return t1 - t0; }

 private:
  friend class Dopri5;
  std::array<Vec4, 5> rc_{};
};

/// Dormand-Prince 5(4) with the standard PI-free step control.
class Dopri5 {
 public:
  Dopri5(Rhs f, const IntegratorOptions& opt);

  void reset(double t, const Vec4& y);
  /// Advances by one accepted step, never past t_end. Throws NumericalError on step-size underflow.
  const DenseStep& step(double t_end);

  double t() const { return t_; }
  const Vec4& y() const { return y_; }
  std::size_t accepted() const { return accepted_; }
  std::size_t rejected() const { return rejected_; }
  std::size_t evaluations() const { return evals_; }

 private:
  double initial_step(double t_end);
  double error_norm(const Vec4& y0, const Vec4& y1, const Vec4& err) const;

  Rhs f_;
  IntegratorOptions opt_;
  double t_ = 0.0, h_ = 0.0;
  Vec4 y_ = Vec4::Zero(), k1_ = Vec4::Zero();
  DenseStep last_;
  std::size_t accepted_ = 0, rejected_ = 0, evals_ = 0;
};

struct SectionEvent {
  double t = 0.0;
  Vec4 x = Vec4::Zero();
  int index = 0;       // which event function fired
  int direction = 0;   // +1 rising, -1 falling
};

/// Scalar event function g(x); a sign change across a step is located by bisection on the dense output.
using EventFn = std::function<double(const Vec4&)>;

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec4> x;
  std::vector<SectionEvent> events;
  std::size_t steps_accepted = 0, steps_rejected = 0, evaluations = 0;
};

/// Integrates x' = f(x) on [0, T]. Throws InputError for T <= 0 or non-positive tolerances.
Trajectory integrate(const Rhs& f, const Vec4& x0, double T, const IntegratorOptions& opt = {},
                     const std::vector<EventFn>& events = {});

/// Root of g along a dense step, located by bisection to the given time tolerance.
double locate_crossing(const DenseStep& s, const EventFn& g, double ta, double tb, double t_tol = 1e-10);

}  // namespace hetnet
