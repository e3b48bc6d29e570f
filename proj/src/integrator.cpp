#include "hetnet/integrator.hpp"

#include "hetnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hetnet {

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Dense output (Hairer & Wanner, contd5).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

Vec4 DenseStep::operator()(double t) const {
  const double h = t1 - t0;
  const double s = h == 0.0 ? 0.0 : (t - t0) / h;
  const double s1 = 1.0 - s;
  return rc_[0] + s * (rc_[1] + s1 * (rc_[2] + s * (rc_[3] + s1 * rc_[4])));
}

Dopri5::Dopri5(Rhs f, const IntegratorOptions& opt) : f_(std::move(f)), opt_(opt) {
  if (!(opt_.rel_tol > 0) || !(opt_.abs_tol > 0)) throw InputError("integrator tolerances must be positive");
}

void Dopri5::reset(double t, const Vec4& y) {
  t_ = t;
  y_ = y;
  k1_ = f_(y_);
  ++evals_;
  h_ = opt_.h0;
}

double Dopri5::error_norm(const Vec4& y0, const Vec4& y1, const Vec4& err) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    s += (err[i] / sc) * (err[i] / sc);
  }
  return std::sqrt(s / 4.0);
}

double Dopri5::initial_step(double t_end) {
  // Hairer's starting-step heuristic.
  double d0 = 0, dd1 = 0;
  for (int i = 0; i < 4; ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
    d0 += (y_[i] / sc) * (y_[i] / sc);
    dd1 += (k1_[i] / sc) * (k1_[i] / sc);
  }
  d0 = std::sqrt(d0 / 4);
  dd1 = std::sqrt(dd1 / 4);
  double h = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
  h = std::min(h, t_end - t_);
  const Vec4 y1 = y_ + h * k1_;
  const Vec4 f1 = f_(y1);
  ++evals_;
  double d2 = 0;
  for (int i = 0; i < 4; ++i) {
    const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
    d2 += ((f1[i] - k1_[i]) / sc) * ((f1[i] - k1_[i]) / sc);
  }
  d2 = std::sqrt(d2 / 4) / h;
  const double m = std::max(dd1, d2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / m, 0.2);
  return std::min({100 * h, h1, t_end - t_});
}

const DenseStep& Dopri5::step(double t_end) {
  if (!(t_end > t_)) throw InputError("step: end time must lie ahead of the current time");
  if (h_ <= 0) h_ = initial_step(t_end);
  if (opt_.h_max > 0) h_ = std::min(h_, opt_.h_max);
  bool last_rejected = false;
  for (;;) {
    double h = std::min(h_, t_end - t_);
    const double hmin = opt_.h_min * std::max(1.0, std::abs(t_));
    if (h < hmin && h < t_end - t_) {
      std::ostringstream os;
      os << "step size underflow at t = " << t_ << ", x = (" << y_.transpose() << ")";
      throw NumericalError(os.str());
    }
    const Vec4& k1 = k1_;
    const Vec4 k2 = f_(y_ + h * (a21 * k1));
    const Vec4 k3 = f_(y_ + h * (a31 * k1 + a32 * k2));
    const Vec4 k4 = f_(y_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec4 k5 = f_(y_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec4 k6 = f_(y_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec4 y1 = y_ + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Vec4 k7 = f_(y1);
    evals_ += 6;
    const Vec4 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(y_, y1, err);
    if (!std::isfinite(en)) {
      std::ostringstream os;
      os << "non-finite state near t = " << t_ << ", x = (" << y_.transpose() << ")";
      throw NumericalError(os.str());
    }
    if (en <= 1.0) {
      const Vec4 dy = y1 - y_;
      const Vec4 bspl = h * k1 - dy;
      last_.t0 = t_;
      last_.t1 = (h == t_end - t_) ? t_end : t_ + h;
      last_.y0 = y_;
      last_.y1 = y1;
      last_.rc_[0] = y_;
      last_.rc_[1] = dy;
      last_.rc_[2] = bspl;
      last_.rc_[3] = dy - h * k7 - bspl;
      last_.rc_[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      t_ = last_.t1;
      y_ = y1;
      k1_ = k7;  // first-same-as-last
      ++accepted_;
      double fac = en == 0.0 ? 5.0 : 0.9 * std::pow(en, -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      h_ = h * fac;
      return last_;
    }
    ++rejected_;
    last_rejected = true;
    h_ = h * std::max(0.2, 0.9 * std::pow(en, -0.2));
  }
}

double locate_crossing(const DenseStep& s, const EventFn& g, double ta, double tb, double t_tol) {
  double ga = g(s(ta));
  while (tb - ta > t_tol) {
    const double tm = 0.5 * (ta + tb);
    const double gm = g(s(tm));
    if ((gm > 0) == (ga > 0)) {
      ta = tm;
      ga = gm;
    } else {
      tb = tm;
    }
  }
  return 0.5 * (ta + tb);
}

Trajectory integrate(const Rhs& f, const Vec4& x0, double T, const IntegratorOptions& opt,
                     const std::vector<EventFn>& events) {
  if (!(T > 0)) throw InputError("integration time must be positive");
  Dopri5 solver(f, opt);
  solver.reset(0.0, x0);
  Trajectory tr;
  tr.t.push_back(0.0);
  tr.x.push_back(x0);
  std::vector<double> gprev;
  for (const auto& g : events) gprev.push_back(g(x0));
  while (solver.t() < T) {
    if (solver.accepted() >= opt.max_steps) {
      std::ostringstream os;
      os << "step limit reached at t = " << solver.t();
      throw NumericalError(os.str());
    }
    const DenseStep& s = solver.step(T);
    for (std::size_t k = 0; k < events.size(); ++k) {
      const double gn = events[k](s.y1);
      if ((gprev[k] < 0 && gn >= 0) || (gprev[k] > 0 && gn <= 0)) {
        const double tc = locate_crossing(s, events[k], s.t0, s.t1);
        tr.events.push_back({tc, s(tc), static_cast<int>(k), gn > gprev[k] ? 1 : -1});
      }
      gprev[k] = gn;
    }
    if (opt.record || solver.t() >= T) {
      tr.t.push_back(solver.t());
      tr.x.push_back(solver.y());
    }
  }
  tr.steps_accepted = solver.accepted();
  tr.steps_rejected = solver.rejected();
  tr.evaluations = solver.evaluations();
  return tr;
}

}  // namespace hetnet
