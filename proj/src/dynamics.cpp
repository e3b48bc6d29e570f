#include "hetnet/dynamics.hpp"

#include "hetnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace hetnet {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Cycle: return "cycle";
    case Verdict::Equilibrium: return "equilibrium";
    case Verdict::Escaped: return "escaped";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

EquilibriumData equilibrium_on(const EquivariantField& f, std::size_t semiaxis) {
  const IsotropyData& iso = f.isotropy();
  const Semiaxis& sa = iso.semiaxes.at(semiaxis);
  const Vec4 u = sa.direction;
  double s = 1.0;
  EquilibriumData eq;
  eq.semiaxis = semiaxis;
  eq.orbit = sa.orbit_id;
  bool converged = false;
  for (int it = 1; it <= 50; ++it) {
    const Vec4 x = s * u;
    const double phi = u.dot(f(x));
    const double dphi = u.dot(f.jacobian(x) * u);
    if (dphi == 0.0) break;
    const double ds = phi / dphi;
    s -= ds;
    eq.iterations = it;
    if (std::abs(ds) < 1e-15 * std::max(1.0, std::abs(s)) && f(s * u).norm() < 1e-12) {
      converged = true;
      break;
    }
  }
  eq.xi = s * u;
  eq.residual = f(eq.xi).norm();
  if (!converged && !(eq.residual < 1e-12)) {
    std::ostringstream os;
    os << "Newton iteration on semiaxis " << semiaxis << " did not converge (|f| = " << eq.residual << ")";
    throw NumericalError(os.str());
  }
  eq.J = f.jacobian(eq.xi);
  eq.radial = u.dot(eq.J * u);
  for (std::size_t q = 0; q < iso.planes.size(); ++q) {
    const Subspace& P = iso.planes[q].space;
    if (!P.contains(u)) continue;
    Vec4 n = P.basis.col(0) - P.basis.col(0).dot(u) * u;
    const Vec4 n1 = P.basis.col(1) - P.basis.col(1).dot(u) * u;
    if (n1.norm() > n.norm()) n = n1;
    n.normalize();
    PlaneEigen pe;
    pe.plane = q;
    pe.orbit = iso.planes[q].orbit_id;
    pe.direction = n;
    pe.lambda = n.dot(eq.J * n);
    pe.residual = (eq.J * n - pe.lambda * n).norm();
    eq.planes.push_back(pe);
  }
  Eigen::EigenSolver<Mat4> es(eq.J, false);
  eq.eigenvalues = es.eigenvalues();
  return eq;
}

std::vector<EquilibriumData> find_equilibria(const EquivariantField& f) {
  std::vector<EquilibriumData> out;
  for (const auto& o : f.isotropy().semiaxis_orbits) out.push_back(equilibrium_on(f, o.rep()));
  return out;
}

CycleEigen classify_for_cycle(const EquilibriumData& eq, int in_orbit, int out_orbit) {
  const auto pick = [&](int orbit, const char* what) -> const PlaneEigen& {
    const PlaneEigen* found = nullptr;
    for (const auto& p : eq.planes) {
      if (p.orbit != orbit) continue;
      if (found) throw StructuralError(std::string(what) + " plane orbit meets the equilibrium in more than one plane");
      found = &p;
    }
    if (!found) throw StructuralError(std::string(what) + " plane orbit " + std::to_string(orbit) +
                                      " does not pass through the equilibrium");
    return *found;
  };
  if (in_orbit == out_orbit) throw StructuralError("incoming and outgoing plane orbits coincide");
  CycleEigen ce;
  ce.in_orbit = in_orbit;
  ce.out_orbit = out_orbit;
  ce.c = -pick(in_orbit, "incoming").lambda;
  ce.e = pick(out_orbit, "outgoing").lambda;
  ce.r = eq.radial;
  ce.t = -std::numeric_limits<double>::infinity();
  for (const auto& p : eq.planes) {
    if (p.orbit == in_orbit || p.orbit == out_orbit) continue;
    ce.transverse_orbits.push_back(p.orbit);
    ce.transverse.push_back(p.lambda);
    ce.t = std::max(ce.t, p.lambda);
  }
  if (ce.transverse.empty()) ce.t = 0.0;
  return ce;
}

// ---------------------------------------------------------------------------

namespace {

double segment_distance(const Vec4& x, const Vec4& a, const Vec4& b) {
  const Vec4 d = b - a;
  const double l2 = d.squaredNorm();
  double s = l2 > 0 ? (x - a).dot(d) / l2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (x - a - s * d).norm();
}

double polyline_distance(const Vec4& x, const std::vector<Vec4>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) best = std::min(best, segment_distance(x, pts[k], pts[k + 1]));
  if (pts.size() == 1) best = (x - pts[0]).norm();
  return best;
}

}  // namespace

AttractionContext::AttractionContext(const EquivariantField& f, double arc_tol) : field_(&f) {
  const IsotropyData& iso = f.isotropy();
  network_ = f.network();
  cycles_ = subcycles(network_);
  equilibria_ = find_equilibria(f);

  std::vector<double> radius(iso.semiaxis_orbits.size(), 1.0);
  for (const auto& eq : equilibria_) radius[static_cast<std::size_t>(eq.orbit)] = eq.xi.norm();
  for (const auto& s : iso.semiaxes) {
    points_.push_back(radius[static_cast<std::size_t>(s.orbit_id)] * s.direction);
    point_orbits_.push_back(s.orbit_id);
  }
  incoming_.resize(points_.size());

  IntegratorOptions opt;
  opt.rel_tol = arc_tol;
  opt.abs_tol = arc_tol * 1e-2;
  for (const auto& inst : f.instances()) {
    // The plane is invariant; integrating the restricted 2-D system keeps
    // rounding noise from pushing the arc off the plane near a saddle.
    const Rhs rhs = [&f, &inst](const Vec4& x) {
      const Vec4 xq = inst.u.dot(x) * inst.u + inst.w.dot(x) * inst.w;
      const Vec4 v = f(xq);
      return Vec4(inst.u.dot(v) * inst.u + inst.w.dot(v) * inst.w);
    };
    for (int m = 0; m < inst.K; ++m) {
      const double ts = 2.0 * std::numbers::pi * m / inst.K;
      const Vec4 ds = std::cos(ts) * inst.u + std::sin(ts) * inst.w;
      const auto from = iso.find_semiaxis(ds);
      if (from < 0) throw StructuralError("source semiaxis of a connection not found");
      for (int sign : {+1, -1}) {
        const double tt = ts + sign * std::numbers::pi / inst.K;
        const auto to = iso.find_semiaxis(std::cos(tt) * inst.u + std::sin(tt) * inst.w);
        if (to < 0) throw StructuralError("target semiaxis of a connection not found");
        ConnectionArc arc;
        arc.from = static_cast<std::size_t>(from);
        arc.to = static_cast<std::size_t>(to);
        arc.plane_orbit = inst.orbit;
        const Vec4 p = points_[arc.from], q = points_[arc.to];
        const Vec4 tangent = sign * (-std::sin(ts) * inst.u + std::cos(ts) * inst.w);
        Dopri5 solver(rhs, opt);
        solver.reset(0.0, p + 1e-7 * tangent);
        arc.points.push_back(p);
        double t = 0.0;
        while ((solver.y() - q).norm() > 1e-6 && t < 200.0) {
          const DenseStep& st = solver.step(200.0);
          t = st.t1;
          // dense output keeps the chord error of the polyline far below the entry distances
          for (int k = 1; k <= 16; ++k) arc.points.push_back(st(st.t0 + st.h() * k / 16.0));
        }
        arc.points.push_back(q);
        incoming_[arc.to].push_back(arcs_.size());
        arcs_.push_back(std::move(arc));
      }
    }
  }
}

double AttractionContext::distance_to_incoming(std::size_t instance, const Vec4& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : incoming_[instance]) best = std::min(best, polyline_distance(x, arcs_[a].points));
  return best;
}

double AttractionContext::distance_to_network(const Vec4& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& inst : field_->instances()) {
    const double a = inst.u.dot(x), b = inst.w.dot(x);
    const Vec4 xp = x - a * inst.u - b * inst.w;
    const double r = std::hypot(a, b);
    best = std::min(best, std::sqrt(xp.squaredNorm() + (r - 1.0) * (r - 1.0)));
  }
  return best;
}

std::string AttractionContext::cycle_name(int cycle) const {
  const auto& c = cycles_.at(static_cast<std::size_t>(cycle));
  std::ostringstream os;
  os << c.vertices.size() << "-cycle";
  for (std::size_t k = 0; k < c.vertices.size(); ++k) os << (k == 0 ? " " : " -> ") << "S" << c.vertices[k];
  return os.str();
}

namespace {

double exact_network_distance(const AttractionContext& ctx, const Vec4& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : ctx.arcs()) best = std::min(best, polyline_distance(x, a.points));
  return best;
}

std::pair<int, double> nearest_point(const AttractionContext& ctx, const Vec4& x) {
  int best = -1;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ctx.points().size(); ++k) {
    const double dk = (x - ctx.points()[k]).norm();
    if (dk < d) {
      d = dk;
      best = static_cast<int>(k);
    }
  }
  return {best, d};
}

int transition_plane(const AttractionContext& ctx, std::size_t a, std::size_t b) {
  const Subspace s = Subspace::span({ctx.points()[a], ctx.points()[b]});
  if (s.dim() != 2) return -1;
  const auto p = ctx.field().isotropy().find_plane(s);
  return p < 0 ? -1 : ctx.field().isotropy().planes[static_cast<std::size_t>(p)].orbit_id;
}

bool edge_exists(const NetworkDiagram& n, int from, int to, int plane) {
  for (const auto& e : n.edges)
    if (e.from == from && e.to == to && e.plane_orbit == plane) return true;
  return false;
}

// Checks whether the completed entries end with `loops` repetitions of some cycle.
bool decide(const AttractionContext& ctx, const AttractionOptions& opt, Itinerary& it) {
  const auto& entries = it.entries;
  const std::size_t known = entries.size() - 1;  // the last entry has no exit plane yet
  for (std::size_t c = 0; c < ctx.cycles().size(); ++c) {
    const auto& cyc = ctx.cycles()[c];
    const std::size_t L = cyc.vertices.size();
    const std::size_t m = L * static_cast<std::size_t>(opt.loops);
    if (known < m) continue;
    const std::size_t start = known - m;
    for (std::size_t k = 0; k < L; ++k) {
      bool match = true;
      for (std::size_t i = 0; i < m && match; ++i) {
        const auto& e = entries[start + i];
        const std::size_t pos = (k + i) % L;
        match = e.eq_orbit == cyc.vertices[pos] &&
                e.exit_plane_orbit == ctx.network().edges[static_cast<std::size_t>(cyc.edges[pos])].plane_orbit;
      }
      if (!match) continue;
      std::vector<double> v;
      for (int j = 0; j < opt.loops; ++j) {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < L; ++i) d = std::min(d, entries[start + j * L + i].entry_distance);
        v.push_back(d);
      }
      bool decreasing = true;
      for (std::size_t j = 1; j < v.size(); ++j) decreasing = decreasing && (v[j] < v[j - 1] || v[j] < opt.floor);
      if (!decreasing) continue;
      it.verdict = Verdict::Cycle;
      it.cycle = static_cast<int>(c);
      it.cycle_name = ctx.cycle_name(static_cast<int>(c));
      it.loop_distances = v;
      return true;
    }
  }
  return false;
}

}  // namespace

Itinerary detect_attraction(const AttractionContext& ctx, const Vec4& x0, const AttractionOptions& opt) {
  if (!(opt.delta > 0) || !(opt.epsilon > 0) || !(opt.max_time > 0) || opt.loops < 1)
    throw InputError("attraction options must be positive");
  const EquivariantField& f = ctx.field();
  IntegratorOptions io;
  io.rel_tol = opt.rel_tol;
  io.abs_tol = opt.abs_tol;
  Dopri5 solver([&f](const Vec4& x) { return f(x); }, io);
  solver.reset(0.0, x0);

  Itinerary it;
  int inside = -1;
  const auto enter = [&](int idx, double t, const Vec4& x) {
    ItineraryEntry e;
    e.instance = static_cast<std::size_t>(idx);
    e.eq_orbit = ctx.point_orbits()[e.instance];
    e.t_enter = t;
    e.entry_distance = ctx.distance_to_incoming(e.instance, x);
    if (!it.entries.empty()) {
      auto& prev = it.entries.back();
      const int plane = transition_plane(ctx, prev.instance, e.instance);
      prev.exit_plane_orbit = plane;
      if (!prev.initial && (plane < 0 || !edge_exists(ctx.network(), prev.eq_orbit, e.eq_orbit, plane)))
        it.impossible_transition = true;
    }
    it.entries.push_back(e);
    inside = idx;
  };

  {
    const auto [idx, d] = nearest_point(ctx, x0);
    if (d < opt.delta) {
      enter(idx, 0.0, x0);
      it.entries.back().initial = true;
    }
  }
  if (ctx.distance_to_network(x0) > opt.epsilon - 0.02 && exact_network_distance(ctx, x0) > opt.epsilon)
    throw InputError("initial point lies outside the epsilon-neighbourhood of the network");

  std::size_t step_count = 0;
  bool done = false;
  while (!done && solver.t() < opt.max_time) {
    const DenseStep& st = solver.step(opt.max_time);
    ++step_count;
    double prev_t = st.t0;
    for (double tm : {0.5 * (st.t0 + st.t1), st.t1}) {
      const Vec4 x = st(tm);
      if (inside >= 0) {
        const Vec4 p = ctx.points()[static_cast<std::size_t>(inside)];
        if ((x - p).norm() > opt.delta) {
          const EventFn g = [&](const Vec4& y) { return (y - p).norm() - opt.delta; };
          const double te = locate_crossing(st, g, prev_t, tm);
          auto& e = it.entries.back();
          e.t_exit = te;
          e.dwell = te - e.t_enter;
          inside = -1;
        }
      }
      if (inside < 0) {
        const auto [idx, d] = nearest_point(ctx, x);
        if (d < opt.delta) {
          const Vec4 p = ctx.points()[static_cast<std::size_t>(idx)];
          const EventFn g = [&](const Vec4& y) { return (y - p).norm() - opt.delta; };
          const double te = (st(prev_t) - p).norm() > opt.delta ? locate_crossing(st, g, prev_t, tm) : prev_t;
          enter(idx, te, st(te));
          if (decide(ctx, opt, it)) {
            done = true;
            break;
          }
        }
      }
      prev_t = tm;
    }
    const Vec4& y = solver.y();
    if (opt.sample_stride > 0 && step_count % opt.sample_stride == 0) {
      const auto [idx, d] = nearest_point(ctx, y);
      it.samples.push_back({solver.t(), y, idx, d});
    }
    if (done) break;
    if (ctx.distance_to_network(y) > opt.epsilon - 0.02 && exact_network_distance(ctx, y) > opt.epsilon) {
      it.verdict = Verdict::Escaped;
      break;
    }
    if (inside >= 0 && solver.t() - it.entries.back().t_enter > opt.equilibrium_dwell) {
      it.verdict = Verdict::Equilibrium;
      break;
    }
  }
  if (!done && it.verdict == Verdict::Inconclusive && inside >= 0 && it.entries.size() == 1)
    it.verdict = Verdict::Equilibrium;
  if (inside >= 0) it.entries.back().dwell = solver.t() - it.entries.back().t_enter;
  it.t_final = solver.t();
  it.x_final = solver.y();
  it.steps = step_count;
  if (it.verdict == Verdict::Inconclusive) it.note = "no cycle repeated with decreasing distance before max_time";
  return it;
}

Vec4 random_seed_near_network(const AttractionContext& ctx, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0)) throw InputError("seed distance bound epsilon must be positive");
  std::mt19937_64 rng(seed);
  const auto& arcs = ctx.arcs();
  if (arcs.empty()) throw InputError("the field has no connections");
  std::uniform_int_distribution<std::size_t> pick_arc(0, arcs.size() - 1);
  const auto& arc = arcs[pick_arc(rng)];
  std::uniform_int_distribution<std::size_t> pick_pt(0, arc.points.size() - 1);
  const Vec4 base = arc.points[pick_pt(rng)];
  std::normal_distribution<double> normal;
  Vec4 dir(normal(rng), normal(rng), normal(rng), normal(rng));
  dir.normalize();
  std::uniform_real_distribution<double> radius(0.0, epsilon);
  return base + radius(rng) * dir;
}

}  // namespace hetnet
