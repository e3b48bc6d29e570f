#include "hetnet/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace hetnet {

using nlohmann::ordered_json;

namespace {

ordered_json vec_json(const Vec4& v) { return ordered_json::array({v[0], v[1], v[2], v[3]}); }

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

std::string vec_text(const Vec4& v) {
  std::ostringstream os;
  // + 0.0 turns -0 into 0
  os << "(" << fmt(v[0] + 0.0) << ", " << fmt(v[1] + 0.0) << ", " << fmt(v[2] + 0.0) << ", " << fmt(v[3] + 0.0) << ")";
  return os.str();
}

ordered_json cycle_json(const NetworkDiagram& n, const DirectedCycle& c) {
  ordered_json edges = ordered_json::array();
  for (int e : c.edges) {
    const auto& d = n.edges.at(static_cast<std::size_t>(e));
    edges.push_back({{"from", d.from}, {"to", d.to}, {"plane_orbit", d.plane_orbit}});
  }
  return {{"vertices", c.vertices}, {"edges", edges}};
}

}  // namespace

std::string classify_text(const FiniteGroup4& g, const IsotropyData& iso, const GroupGraph& graph,
                          const ExpectedType& expected) {
  std::ostringstream os;
  if (g.presentation()) os << "group " << g.presentation()->str() << "\n";
  os << "order " << g.size() << (g.is_rotation_group() ? " (rotations only)" : " (contains reflections)") << "\n\n";

  os << "plane orbits\n";
  for (std::size_t o = 0; o < iso.plane_orbits.size(); ++o) {
    const auto& po = iso.plane_orbits[o];
    const auto& p = iso.planes[po.rep()];
    os << "  P" << o << "  members " << po.members.size() << "  |Sigma| " << p.sigma.size() << "  K "
       << (po.K ? std::to_string(*po.K) : std::string("none")) << "  basis " << vec_text(p.space.basis.col(0)) << " "
       << vec_text(p.space.basis.col(1));
    for (int n : graph.non_intersecting_planes)
      if (n == static_cast<int>(o)) os << "  [meets no semiaxis]";
    for (int n : graph.hyperedge_planes)
      if (n == static_cast<int>(o)) os << "  [meets more than two semiaxis orbits]";
    os << "\n";
  }
  os << "\nsemiaxis orbits\n";
  for (std::size_t o = 0; o < iso.semiaxis_orbits.size(); ++o) {
    const auto& so = iso.semiaxis_orbits[o];
    const auto& s = iso.semiaxes[so.rep()];
    os << "  S" << o << "  members " << so.members.size() << "  |Delta| " << s.delta.size() << "  direction "
       << vec_text(s.direction) << "  " << (so.simple ? "simple" : "not simple") << (so.paired ? ", paired" : "")
       << "\n";
  }
  os << "\ngraph: " << graph.num_vertices << " vertices, " << graph.edges.size() << " edges, "
     << (graph.simple ? "simple" : "not simple") << "\n";
  for (const auto& e : graph.edges) os << "  S" << e.u << " -- S" << e.v << "  via P" << e.plane_orbit << "\n";
  os << "type " << to_string(graph.type) << "\n";
  if (expected.listed) {
    os << "table: " << expected.row << " -> type " << to_string(expected.type)
       << (expected.type == graph.type ? " (agrees)" : " (DISAGREES)") << "\n";
  } else {
    os << "table: not listed" << (expected.reason.empty() ? "" : " (" + expected.reason + ")") << "\n";
  }
  return os.str();
}

std::string graph_dot(const GroupGraph& graph, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (int v = 0; v < graph.num_vertices; ++v) os << "  S" << v << ";\n";
  for (const auto& e : graph.edges) os << "  S" << e.u << " -- S" << e.v << " [label=\"P" << e.plane_orbit << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string network_dot(const NetworkDiagram& n, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  if (!n.label.empty()) os << "  label=\"" << n.label << "\";\n";
  for (int v = 0; v < n.num_vertices; ++v) os << "  S" << v << ";\n";
  for (const auto& e : n.edges) os << "  S" << e.from << " -> S" << e.to << " [label=\"P" << e.plane_orbit << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string networks_json(const GroupGraph& graph, const std::vector<NetworkDiagram>& networks,
                          const std::string& note) {
  ordered_json j;
  j["graph_type"] = to_string(graph.type);
  j["simple"] = graph.simple;
  j["count"] = networks.size();
  if (!note.empty()) j["note"] = note;
  ordered_json arr = ordered_json::array();
  for (const auto& n : networks) {
    ordered_json e = ordered_json::array();
    for (const auto& d : n.edges) e.push_back({{"from", d.from}, {"to", d.to}, {"plane_orbit", d.plane_orbit}});
    ordered_json cyc = ordered_json::array();
    for (const auto& c : subcycles(n)) cyc.push_back(cycle_json(n, c));
    arr.push_back({{"label", n.label}, {"signature", n.signature}, {"edges", e}, {"subcycles", cyc}});
  }
  j["networks"] = arr;
  return j.dump(2) + "\n";
}

std::string equilibria_json(const EquivariantField& f, const std::vector<EquilibriumData>& eqs) {
  ordered_json arr = ordered_json::array();
  for (const auto& eq : eqs) {
    ordered_json planes = ordered_json::array();
    for (const auto& p : eq.planes) {
      ordered_json pj{{"plane", p.plane}, {"plane_orbit", p.orbit}, {"lambda", p.lambda},
                      {"direction", vec_json(p.direction)}, {"residual", p.residual}};
      for (const auto& o : f.orientation()) {
        if (o.orbit != p.orbit) continue;
        if (o.source_orbit == eq.orbit)
          pj["lambda_limit"] = f.limit_eigenvalue(p.orbit, true);
        else if (o.target_orbit == eq.orbit)
          pj["lambda_limit"] = f.limit_eigenvalue(p.orbit, false);
      }
      planes.push_back(pj);
    }
    ordered_json ev = ordered_json::array();
    for (int k = 0; k < 4; ++k) ev.push_back({eq.eigenvalues[k].real(), eq.eigenvalues[k].imag()});
    arr.push_back({{"orbit", eq.orbit},
                   {"semiaxis", eq.semiaxis},
                   {"xi", vec_json(eq.xi)},
                   {"residual", eq.residual},
                   {"newton_iterations", eq.iterations},
                   {"radial", eq.radial},
                   {"planes", planes},
                   {"eigenvalues", ev}});
  }
  ordered_json j{{"B", f.B()}, {"angular_scale", to_string(f.spec().scale)}, {"equilibria", arr}};
  return j.dump(2) + "\n";
}

std::string itinerary_json(const AttractionContext& ctx, const Itinerary& it, const Vec4& x0, std::uint64_t seed) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : it.entries) {
    entries.push_back({{"equilibrium", e.eq_orbit},
                       {"instance", e.instance},
                       {"t_enter", e.t_enter},
                       {"t_exit", e.t_exit},
                       {"dwell", e.dwell},
                       {"exit_plane_orbit", e.exit_plane_orbit},
                       {"entry_distance", e.entry_distance},
                       {"initial", e.initial}});
  }
  ordered_json j{{"seed", seed},
                 {"x0", vec_json(x0)},
                 {"verdict", to_string(it.verdict)},
                 {"cycle", it.cycle},
                 {"cycle_name", it.cycle_name},
                 {"loop_distances", it.loop_distances},
                 {"impossible_transition", it.impossible_transition},
                 {"t_final", it.t_final},
                 {"x_final", vec_json(it.x_final)},
                 {"steps", it.steps},
                 {"note", it.note},
                 {"network", ctx.network().label},
                 {"entries", entries}};
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const std::vector<TrajectorySample>& samples, const std::vector<int>& point_orbits) {
  std::string out = "t,x1,x2,x3,x4,nearest_instance,nearest_orbit,distance,p1,p2\n";
  char buf[512];
  for (const auto& s : samples) {
    const int orbit = s.nearest >= 0 && static_cast<std::size_t>(s.nearest) < point_orbits.size()
                          ? point_orbits[static_cast<std::size_t>(s.nearest)]
                          : -1;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g,%.17g\n", s.t, s.x[0], s.x[1],
                  s.x[2], s.x[3], s.nearest, orbit, s.distance, kProjectionV1.dot(s.x), kProjectionV2.dot(s.x));
    out += buf;
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_name) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key off\n"
     << "set terminal pngcairo size 1200,500\n"
     << "set output 'trajectory.png'\n"
     << "set multiplot layout 1,2\n"
     << "set xlabel 'v1.x'\nset ylabel 'v2.x'\n"
     << "plot '" << csv_name << "' using 9:10 every ::1 with lines\n"
     << "set xlabel 't'\nset ylabel 'distance to nearest equilibrium'\nset logscale y\n"
     << "plot '" << csv_name << "' using 1:8 every ::1 with lines\n"
     << "unset multiplot\n";
  return os.str();
}

std::string stability_json(const StabilityReport& rep) {
  ordered_json eig = ordered_json::array();
  for (const auto& n : rep.eigen) {
    ordered_json planes = ordered_json::array();
    for (const auto& [o, l] : n.planes) planes.push_back({{"plane_orbit", o}, {"lambda", l}});
    eig.push_back({{"equilibrium", n.eq_orbit}, {"radial", n.radial}, {"planes", planes}});
  }
  ordered_json cycles = ordered_json::array();
  for (const auto& cr : rep.cycle_reports) {
    ordered_json nodes = ordered_json::array();
    for (const auto& nd : cr.spec.nodes)
      nodes.push_back({{"equilibrium", nd.eq_orbit},
                       {"in_plane_orbit", nd.in_orbit},
                       {"out_plane_orbit", nd.out_orbit},
                       {"c", nd.c},
                       {"e", nd.e},
                       {"t", nd.t}});
    cycles.push_back({{"name", cr.spec.name},
                      {"type_a", cr.spec.typeA},
                      {"nodes", nodes},
                      {"condst", {{"holds", cr.condst.holds},
                                  {"degenerate", cr.condst.degenerate},
                                  {"product", cr.condst.product},
                                  {"ratios", cr.condst.ratios},
                                  {"witness", cr.condst.witness}}},
                      {"stability", to_string(cr.stability)},
                      {"principal", cr.principal},
                      {"minus_principal", cr.minus_principal}});
  }
  ordered_json principal = nullptr;
  if (rep.principal_ok) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : rep.principal.nodes)
      nodes.push_back({{"equilibrium", n.eq_orbit},
                       {"principal_plane_orbit", n.principal_orbit},
                       {"principal_lambda", n.principal_lambda},
                       {"principal_edge", n.principal_edge},
                       {"minus_plane_orbit", n.minus_orbit},
                       {"minus_lambda", n.minus_lambda}});
    principal = {{"nodes", nodes},
                 {"principal_edges", rep.principal.principal_edges},
                 {"minus_principal_edges", rep.principal.minus_principal_edges},
                 {"principal_cycles", rep.principal.principal_cycles},
                 {"minus_principal_cycles", rep.principal.minus_principal_cycles}};
  }
  const auto verdict = [](const NetworkVerdict& v) {
    return ordered_json{{"holds", v.holds},
                        {"degenerate", v.degenerate},
                        {"principal_cycles_fas", v.principal_cycles_fas},
                        {"principal_connections", v.principal_connections},
                        {"witness", v.witness}};
  };
  ordered_json j{{"network", rep.network.label},
                 {"eigen", eig},
                 {"cycles", cycles},
                 {"principal", principal},
                 {"eas", verdict(rep.eas)},
                 {"fas", verdict(rep.fas)},
                 {"verdict", to_string(rep.verdict)},
                 {"inconsistencies", rep.inconsistencies},
                 {"notes", rep.notes}};
  return j.dump(2) + "\n";
}

std::string stability_text(const StabilityReport& rep) {
  std::ostringstream os;
  os << "network " << rep.network.label << "\n";
  for (const auto& cr : rep.cycle_reports) {
    os << "  " << cr.spec.name << ": product " << fmt(cr.condst.product, 4) << ", " << to_string(cr.stability)
       << (cr.principal ? ", principal" : "") << (cr.minus_principal ? ", minus-principal" : "");
    if (!cr.condst.holds && !cr.condst.witness.empty()) os << " (" << cr.condst.witness << ")";
    os << "\n";
  }
  os << "network verdict: " << to_string(rep.verdict) << "\n";
  const auto line = [&](const char* what, const NetworkVerdict& v) {
    os << "  " << what << ": " << (v.holds ? "yes" : "no");
    if (!v.witness.empty()) os << " (" << v.witness << ")";
    os << "\n";
  };
  line("e.a.s.", rep.eas);
  line("f.a.s.", rep.fas);
  for (const auto& s : rep.inconsistencies) os << "  inconsistency: " << s << "\n";
  for (const auto& s : rep.notes) os << "  note: " << s << "\n";
  return os.str();
}

}  // namespace hetnet
