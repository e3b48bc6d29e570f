#include "hetnet/stability.hpp"

#include "hetnet/errors.hpp"
#include "hetnet/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hetnet {

namespace {

constexpr double kMarginal = 1e-9;

std::string vertex_name(int v) { return "S" + std::to_string(v); }

std::string cycle_label(const DirectedCycle& c) {
  std::ostringstream os;
  os << c.vertices.size() << "-cycle";
  for (std::size_t k = 0; k < c.vertices.size(); ++k) os << (k == 0 ? " " : " -> ") << vertex_name(c.vertices[k]);
  return os.str();
}

const NodeEigen& eigen_for(const std::vector<NodeEigen>& eig, int orbit) {
  for (const auto& n : eig)
    if (n.eq_orbit == orbit) return n;
  throw StructuralError("no eigen-data for equilibrium orbit " + std::to_string(orbit));
}

}  // namespace

double NodeEigen::lambda(int plane_orbit) const {
  for (const auto& [o, l] : planes)
    if (o == plane_orbit) return l;
  throw StructuralError("plane orbit " + std::to_string(plane_orbit) + " does not pass through equilibrium " +
                        vertex_name(eq_orbit));
}

NodeEigen node_eigen(const EquilibriumData& eq) {
  NodeEigen n;
  n.eq_orbit = eq.orbit;
  n.radial = eq.radial;
  for (const auto& p : eq.planes) {
    const bool seen = std::any_of(n.planes.begin(), n.planes.end(), [&](const auto& q) { return q.first == p.orbit; });
    if (!seen) n.planes.emplace_back(p.orbit, p.lambda);
  }
  return n;
}

CycleSpec make_cycle_spec(const NetworkDiagram& n, const DirectedCycle& cycle, const std::vector<NodeEigen>& eig,
                          bool typeA) {
  CycleSpec spec;
  spec.name = cycle_label(cycle);
  spec.typeA = typeA;
  const std::size_t L = cycle.edges.size();
  for (std::size_t k = 0; k < L; ++k) {
    const DirectedEdge& out = n.edges.at(static_cast<std::size_t>(cycle.edges[k]));
    const DirectedEdge& in = n.edges.at(static_cast<std::size_t>(cycle.edges[(k + L - 1) % L]));
    const NodeEigen& ne = eigen_for(eig, cycle.vertices[k]);
    if (in.plane_orbit == out.plane_orbit)
      throw StructuralError("incoming and outgoing connections at " + vertex_name(ne.eq_orbit) +
                            " lie in the same plane orbit");
    CycleNode node;
    node.eq_orbit = ne.eq_orbit;
    node.in_orbit = in.plane_orbit;
    node.out_orbit = out.plane_orbit;
    node.c = -ne.lambda(in.plane_orbit);
    node.e = ne.lambda(out.plane_orbit);
    node.t = -std::numeric_limits<double>::infinity();
    for (const auto& [o, l] : ne.planes)
      if (o != in.plane_orbit && o != out.plane_orbit) node.t = std::max(node.t, l);
    if (!std::isfinite(node.t)) throw StructuralError("no transverse direction at " + vertex_name(ne.eq_orbit));
    spec.nodes.push_back(node);
  }
  return spec;
}

bool is_type_a(const IsotropyData& iso, const NetworkDiagram& n, const DirectedCycle& cycle) {
  for (int e : cycle.edges) {
    const int orbit = n.edges.at(static_cast<std::size_t>(e)).plane_orbit;
    const auto& plane = iso.planes.at(iso.plane_orbits.at(static_cast<std::size_t>(orbit)).rep());
    if (plane.sigma.size() != 2) return false;
  }
  return true;
}

CondstResult check_condst(const CycleSpec& c) {
  if (!c.typeA) throw InputError(c.name + ": condst applies to type A cycles only");
  if (c.nodes.empty()) throw InputError("condst: empty cycle");
  CondstResult r;
  for (const auto& n : c.nodes) {
    if (!(n.c > 0) || !(n.e > 0)) {
      std::ostringstream os;
      os << c.name << ": need c > 0 and e > 0 at " << vertex_name(n.eq_orbit) << " (c = " << n.c << ", e = " << n.e
         << ")";
      throw InputError(os.str());
    }
    r.ratios.push_back(n.c / n.e);
    r.product *= n.c / n.e;
  }
  std::ostringstream os;
  if (std::abs(r.product - 1.0) < kMarginal) {
    r.degenerate = true;
    os << "product of c_j/e_j = " << r.product << " is within 1e-9 of 1";
    r.witness = os.str();
    return r;
  }
  for (const auto& n : c.nodes) {
    if (std::abs(n.e - n.t) < kMarginal) {
      r.degenerate = true;
      os << "e = t within 1e-9 at " << vertex_name(n.eq_orbit);
      r.witness = os.str();
      return r;
    }
  }
  if (r.product <= 1.0) {
    os << "product of c_j/e_j = " << r.product << " <= 1";
    r.witness = os.str();
    return r;
  }
  for (const auto& n : c.nodes) {
    if (n.e <= n.t) {
      os << "e <= t at " << vertex_name(n.eq_orbit) << " (e = " << n.e << ", t = " << n.t << ")";
      r.witness = os.str();
      return r;
    }
  }
  r.holds = true;
  return r;
}

std::string to_string(CycleStability s) {
  switch (s) {
    case CycleStability::Unstable: return "not f.a.s.";
    case CycleStability::FAS: return "f.a.s.";
    case CycleStability::EAS: return "e.a.s.";
    case CycleStability::NoVerdict: return "degenerate - no verdict";
  }
  return "degenerate - no verdict";
}

std::string to_string(NetworkStability s) {
  switch (s) {
    case NetworkStability::NotFAS: return "not f.a.s.";
    case NetworkStability::FAS: return "f.a.s.";
    case NetworkStability::EAS: return "e.a.s.";
    case NetworkStability::NoVerdict: return "degenerate - no verdict";
  }
  return "degenerate - no verdict";
}

CycleStability cycle_stability(const CondstResult& r) {
  if (r.degenerate) return CycleStability::NoVerdict;
  return r.holds ? CycleStability::EAS : CycleStability::Unstable;
}

bool PrincipalStructure::is_principal_edge(int edge) const {
  return std::find(principal_edges.begin(), principal_edges.end(), edge) != principal_edges.end();
}

bool PrincipalStructure::is_principal_cycle(int cycle) const {
  return std::find(principal_cycles.begin(), principal_cycles.end(), cycle) != principal_cycles.end();
}

PrincipalStructure principal_structure(const NetworkDiagram& n, const std::vector<DirectedCycle>& cycles,
                                       const std::vector<NodeEigen>& eig) {
  PrincipalStructure ps;
  std::vector<bool> present(static_cast<std::size_t>(n.num_vertices), false);
  for (const auto& e : n.edges) present[static_cast<std::size_t>(e.from)] = present[static_cast<std::size_t>(e.to)] = true;

  for (int v = 0; v < n.num_vertices; ++v) {
    if (!present[static_cast<std::size_t>(v)]) continue;
    const NodeEigen& ne = eigen_for(eig, v);
    if (ne.planes.empty()) throw StructuralError("no eigen-directions at " + vertex_name(v));
    // (eigenvalue, plane orbit); the radial direction takes orbit -1
    std::vector<std::pair<double, int>> all;
    for (const auto& [o, l] : ne.planes) all.emplace_back(l, o);
    std::vector<std::pair<double, int>> nonradial = all;
    all.emplace_back(ne.radial, -1);
    std::sort(all.begin(), all.end());
    std::sort(nonradial.begin(), nonradial.end());

    NodePrincipal np;
    np.eq_orbit = v;
    const auto& top = all.back();
    if (all.size() > 1 && top.first - all[all.size() - 2].first < kMarginal)
      throw DegenerateError("maximal eigenvalue at " + vertex_name(v) + " is not unique");
    np.principal_orbit = top.second;
    np.principal_lambda = top.first;
    if (nonradial.size() > 1 && nonradial[1].first - nonradial[0].first < kMarginal)
      throw DegenerateError("minimal non-radial eigenvalue at " + vertex_name(v) + " is not unique");
    np.minus_orbit = nonradial.front().second;
    np.minus_lambda = nonradial.front().first;
    for (std::size_t k = 0; k < n.edges.size(); ++k) {
      const auto& e = n.edges[k];
      if (e.from == v && np.principal_orbit >= 0 && e.plane_orbit == np.principal_orbit && np.principal_lambda > 0) {
        np.principal_edge = static_cast<int>(k);
        ps.principal_edges.push_back(static_cast<int>(k));
      }
      if (e.to == v && e.plane_orbit == np.minus_orbit) ps.minus_principal_edges.push_back(static_cast<int>(k));
    }
    ps.nodes.push_back(np);
  }
  std::sort(ps.principal_edges.begin(), ps.principal_edges.end());
  std::sort(ps.minus_principal_edges.begin(), ps.minus_principal_edges.end());

  const auto all_in = [](const DirectedCycle& c, const std::vector<int>& set) {
    return std::all_of(c.edges.begin(), c.edges.end(),
                       [&](int e) { return std::binary_search(set.begin(), set.end(), e); });
  };
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (all_in(cycles[c], ps.principal_edges)) ps.principal_cycles.push_back(static_cast<int>(c));
    if (all_in(cycles[c], ps.minus_principal_edges)) ps.minus_principal_cycles.push_back(static_cast<int>(c));
  }
  return ps;
}

NetworkVerdict network_eas(const NetworkDiagram& n, const std::vector<CycleSpec>& cycles,
                           const PrincipalStructure& ps) {
  (void)n;
  NetworkVerdict v;
  v.principal_cycles_fas = true;
  std::ostringstream os;
  for (int c : ps.principal_cycles) {
    const CycleSpec& spec = cycles.at(static_cast<std::size_t>(c));
    const CondstResult r = check_condst(spec);
    if (r.degenerate) {
      v.degenerate = true;
      v.principal_cycles_fas = false;
      if (os.tellp() == 0) os << "principal " << spec.name << ": " << r.witness;
    } else if (!r.holds) {
      v.principal_cycles_fas = false;
      if (os.tellp() == 0) os << "principal " << spec.name << " fails condst: " << r.witness;
    }
  }
  v.principal_connections = true;
  for (const auto& np : ps.nodes) {
    if (np.principal_edge >= 0) continue;
    v.principal_connections = false;
    if (os.tellp() == 0) {
      os << "principal direction at " << vertex_name(np.eq_orbit);
      if (np.principal_orbit < 0)
        os << " is radial";
      else
        os << " (plane orbit " << np.principal_orbit << ", eigenvalue " << np.principal_lambda << ")";
      os << " is not a connection of the network";
    }
  }
  v.holds = v.principal_cycles_fas && v.principal_connections;
  if (v.holds && ps.principal_cycles.empty()) {
    v.holds = false;
    os << "no principal cycle";
  }
  v.witness = os.str();
  return v;
}

NetworkVerdict network_fas(const std::vector<CycleSpec>& cycles) {
  NetworkVerdict v;
  std::ostringstream os;
  for (const auto& spec : cycles) {
    const CondstResult r = check_condst(spec);
    if (r.holds) {
      v.holds = true;
      v.witness = spec.name + " satisfies condst";
      return v;
    }
    if (r.degenerate) {
      v.degenerate = true;
      if (os.tellp() == 0) os << spec.name << ": " << r.witness;
    }
  }
  v.witness = v.degenerate ? os.str() : "no subcycle satisfies condst";
  return v;
}

StabilityReport analyze_stability(const EquivariantField& f) {
  StabilityReport rep;
  rep.network = f.network();
  rep.cycles = subcycles(rep.network);
  rep.equilibria = find_equilibria(f);
  for (const auto& eq : rep.equilibria) rep.eigen.push_back(node_eigen(eq));

  bool all_type_a = true;
  std::vector<CycleSpec> specs;
  for (const auto& c : rep.cycles) {
    CycleReport cr;
    cr.spec = make_cycle_spec(rep.network, c, rep.eigen, is_type_a(f.isotropy(), rep.network, c));
    if (cr.spec.typeA) {
      cr.condst = check_condst(cr.spec);
      cr.stability = cycle_stability(cr.condst);
    } else {
      all_type_a = false;
      cr.condst.witness = "not a type A cycle";
      rep.notes.push_back(cr.spec.name + " is not of type A; condst does not apply");
    }
    specs.push_back(cr.spec);
    rep.cycle_reports.push_back(cr);
  }

  try {
    rep.principal = principal_structure(rep.network, rep.cycles, rep.eigen);
    rep.principal_ok = true;
  } catch (const DegenerateError& e) {
    rep.notes.push_back(std::string("principal structure undefined: ") + e.what());
  }
  for (std::size_t c = 0; c < rep.cycle_reports.size() && rep.principal_ok; ++c) {
    const int ci = static_cast<int>(c);
    rep.cycle_reports[c].principal = rep.principal.is_principal_cycle(ci);
    rep.cycle_reports[c].minus_principal =
        std::find(rep.principal.minus_principal_cycles.begin(), rep.principal.minus_principal_cycles.end(), ci) !=
        rep.principal.minus_principal_cycles.end();
  }

  if (!all_type_a) {
    rep.notes.push_back("network verdicts need every cycle to be of type A");
    rep.verdict = NetworkStability::NoVerdict;
    return rep;
  }
  rep.fas = network_fas(specs);
  if (rep.principal_ok) {
    rep.eas = network_eas(rep.network, specs, rep.principal);
  } else {
    rep.eas.degenerate = true;
    rep.eas.witness = "principal structure undefined";
  }

  if (rep.eas.holds)
    rep.verdict = NetworkStability::EAS;
  else if (rep.fas.holds)
    rep.verdict = rep.eas.degenerate ? NetworkStability::NoVerdict : NetworkStability::FAS;
  else
    rep.verdict = rep.fas.degenerate ? NetworkStability::NoVerdict : NetworkStability::NotFAS;

  if (rep.eas.holds && !rep.fas.holds) rep.inconsistencies.push_back("network e.a.s. but not f.a.s.");
  for (const auto& cr : rep.cycle_reports)
    if (cr.condst.holds && rep.principal_ok && !cr.principal)
      rep.inconsistencies.push_back(cr.spec.name + " satisfies condst but is not principal");
  return rep;
}

// ---------------------------------------------------------------------------

std::pair<double, double> LocalMapData::operator()(double x1, double x2) const {
  const double a = std::abs(x1);
  return {A * std::pow(a, alpha), A2 * x2 * std::pow(a, beta)};
}

LocalMapData local_map_exponents(double c, double e, double t, double delta) {
  if (!(e > 0)) throw InputError("local map: expanding eigenvalue must be positive");
  if (!(c > 0)) throw InputError("local map: contracting eigenvalue must be positive");
  if (!(delta > 0)) throw InputError("local map: section offset must be positive");
  LocalMapData m;
  m.alpha = c / e;
  m.beta = -t / e;
  m.A = std::pow(delta, 1.0 - m.alpha);
  m.A2 = std::pow(delta, -m.beta);
  return m;
}

LocalMapData local_map_exponents(const CycleNode& node, double delta) {
  return local_map_exponents(node.c, node.e, node.t, delta);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0) throw InputError("line fit: all abscissae coincide");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - f.intercept - f.slope * x[k];
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

namespace {

// Frame (xi/|xi|, v_c, v_e, v_t) at an equilibrium for a given node.
Mat4 node_frame(const EquilibriumData& eq, const CycleNode& node) {
  Mat4 Q;
  Q.col(0) = eq.xi.normalized();
  int found = 0;
  double best_t = -std::numeric_limits<double>::infinity();
  for (const auto& p : eq.planes) {
    if (p.orbit == node.in_orbit) {
      Q.col(1) = p.direction;
      found |= 1;
    } else if (p.orbit == node.out_orbit) {
      Q.col(2) = p.direction;
      found |= 2;
    } else if (p.lambda > best_t) {
      best_t = p.lambda;
      Q.col(3) = p.direction;
      found |= 4;
    }
  }
  if (found != 7) throw StructuralError("equilibrium lacks the planes of the requested node");
  return Q;
}

struct SectionHit {
  double t = 0.0;
  Vec4 z = Vec4::Zero();
};

// Integrates dz/dt = Q^-1 f(base + Q z) until g(z) rises through zero.
SectionHit run_to_section(const EquivariantField& f, const Vec4& base, const Mat4& Q, const Vec4& z0,
                          const EventFn& g, double rel_tol, double abs_tol, double t_max) {
  const Mat4 Qi = Q.inverse();
  IntegratorOptions io;
  io.rel_tol = rel_tol;
  io.abs_tol = abs_tol;
  io.record = false;
  Dopri5 solver([&](const Vec4& z) { return Vec4(Qi * f(base + Q * z)); }, io);
  solver.reset(0.0, z0);
  double g_prev = g(z0);
  while (solver.t() < t_max) {
    const DenseStep& st = solver.step(t_max);
    const double g1 = g(st.y1);
    if (g_prev < 0 && g1 >= 0) {
      const double tc = locate_crossing(st, g, st.t0, st.t1, 1e-13);
      return {tc, st(tc)};
    }
    g_prev = g1;
    if (st.y1.norm() > 1.0) break;
  }
  throw NumericalError("trajectory left the neighbourhood before reaching the outgoing section (is the outgoing direction principal?)");
}

}  // namespace

LocalMapFit fit_local_map(const EquivariantField& f, const EquilibriumData& eq, const CycleNode& node,
                          const LocalMapFitOptions& opt) {
  if (!(node.e > 0)) throw InputError("local map: expanding eigenvalue must be positive");
  if (opt.samples < 3 || !(opt.xe_min > 0) || !(opt.xe_max > opt.xe_min))
    throw InputError("local map fit: bad sampling window");
  const Mat4 Q = node_frame(eq, node);
  const double delta = opt.delta;
  const EventFn exit = [delta](const Vec4& z) { return z[2] - delta; };
  const double t_max = 50.0;

  LocalMapFit fit;
  std::vector<double> lx, lc, lg;
  for (int k = 0; k < opt.samples; ++k) {
    const double s = static_cast<double>(k) / (opt.samples - 1);
    const double xe = opt.xe_min * std::pow(opt.xe_max / opt.xe_min, s);
    const SectionHit h0 = run_to_section(f, eq.xi, Q, Vec4(0, delta, xe, 0), exit, opt.rel_tol, opt.abs_tol, t_max);
    const SectionHit hp =
        run_to_section(f, eq.xi, Q, Vec4(0, delta, xe, opt.tau), exit, opt.rel_tol, opt.abs_tol, t_max);
    const SectionHit hm =
        run_to_section(f, eq.xi, Q, Vec4(0, delta, xe, -opt.tau), exit, opt.rel_tol, opt.abs_tol, t_max);
    const double yc = std::abs(h0.z[1]);
    const double gt = std::abs(0.5 * (hp.z[3] - hm.z[3]));
    if (!(yc > 0) || !(gt > 0)) throw NumericalError("local map fit: exit coordinate vanished");
    fit.xe.push_back(xe);
    fit.yc.push_back(yc);
    fit.gt.push_back(gt);
    lx.push_back(std::log(xe));
    lc.push_back(std::log(yc));
    lg.push_back(std::log(gt));
  }
  const LineFit fa = fit_line(lx, lc);
  const LineFit fb = fit_line(lx, lg);
  fit.map.alpha = fa.slope;
  fit.map.A = std::exp(fa.intercept);
  fit.map.beta = fb.slope;
  fit.map.A2 = std::exp(fb.intercept) / opt.tau;
  fit.alpha_residual = fa.residual;
  fit.beta_residual = fb.residual;
  return fit;
}

Eigen::Matrix2d global_map_jacobian(const EquivariantField& f, const EquilibriumData& from, const CycleNode& from_node,
                                    const EquilibriumData& to, const CycleNode& to_node, double delta, double h) {
  if (!(delta > 0) || !(h > 0)) throw InputError("global map: delta and h must be positive");
  const Mat4 Qa = node_frame(from, from_node);
  const Mat4 Qb_rep = node_frame(to, to_node);
  const auto& g = f.group();

  // Follow the connection from the outgoing section to find which instance of `to` it reaches.
  const Vec4 start = from.xi + delta * Qa.col(2);
  IntegratorOptions io;
  io.rel_tol = 1e-12;
  io.abs_tol = 1e-15;
  io.record = false;
  Dopri5 probe([&](const Vec4& x) { return f(x); }, io);
  probe.reset(0.0, start);
  std::ptrdiff_t target = -1;
  while (probe.t() < 100.0 && target < 0) {
    probe.step(100.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if ((probe.y() - g[j] * to.xi).norm() < 2 * delta) {
        target = static_cast<std::ptrdiff_t>(j);
        break;
      }
    }
  }
  if (target < 0) throw NumericalError("global map: the connection does not reach the next equilibrium");
  const Mat4& gm = g[static_cast<std::size_t>(target)];
  const Vec4 xi_b = gm * to.xi;
  const Mat4 Qb = gm * Qb_rep;
  const Mat4 Qbi = Qb.inverse();
  // The connection arrives on one side of the contracting direction.
  const double side = (Qbi * (probe.y() - xi_b))[1] >= 0 ? 1.0 : -1.0;

  const auto image = [&](double yc, double yt) -> Eigen::Vector2d {
    const Vec4 x0 = from.xi + delta * Qa.col(2) + yc * Qa.col(1) + yt * Qa.col(3);
    Dopri5 s([&](const Vec4& x) { return f(x); }, io);
    s.reset(0.0, x0);
    const EventFn sec = [&](const Vec4& x) { return delta - side * (Qbi * (x - xi_b))[1]; };
    double gp = sec(x0);
    bool armed = false;  // the section is crossed when approaching, not when leaving the start region
    while (s.t() < 100.0) {
      const DenseStep& st = s.step(100.0);
      const double g1 = sec(st.y1);
      if (!armed && (st.y1 - xi_b).norm() < 3 * delta) armed = true;
      if (armed && gp < 0 && g1 >= 0) {
        const double tc = locate_crossing(st, sec, st.t0, st.t1, 1e-13);
        const Vec4 z = Qbi * (st(tc) - xi_b);
        return {z[2], z[3]};
      }
      gp = g1;
    }
    throw NumericalError("global map: incoming section not reached");
  };
  Eigen::Matrix2d J;
  J.col(0) = (image(h, 0) - image(-h, 0)) / (2 * h);
  J.col(1) = (image(0, h) - image(0, -h)) / (2 * h);
  return J;
}

}  // namespace hetnet
