#pragma once

#include "hetnet/dynamics.hpp"
#include "hetnet/graphs.hpp"
#include "hetnet/isotropy.hpp"
#include "hetnet/stability.hpp"
#include "hetnet/vfield.hpp"

#include <string>
#include <vector>

namespace hetnet {

/// Projection vectors used for the two-dimensional trajectory plots.
inline const Vec4 kProjectionV1{4.0, 2.0, 4.0, 1.5};
inline const Vec4 kProjectionV2{2.0, 4.0, -1.5, 4.0};

/// Plane and semiaxis orbit tables, simplicity flags, graph type and the table cross-check.
std::string classify_text(const FiniteGroup4& g, const IsotropyData& iso, const GroupGraph& graph,
                          const ExpectedType& expected);

/// Undirected multigraph: vertices are semiaxis orbits, edges plane orbits.
std::string graph_dot(const GroupGraph& graph, const std::string& name = "graph");
/// Directed diagram of a network.
std::string network_dot(const NetworkDiagram& n, const std::string& name = "network");

/// Networks with labels, edge lists and subcycles.
std::string networks_json(const GroupGraph& graph, const std::vector<NetworkDiagram>& networks,
                          const std::string& note = {});

/// Equilibria with their labelled eigenvalues and the B -> infinity predictions.
std::string equilibria_json(const EquivariantField& f, const std::vector<EquilibriumData>& eqs);

std::string itinerary_json(const AttractionContext& ctx, const Itinerary& it, const Vec4& x0, std::uint64_t seed);

/// Columns t, x1..x4, nearest, distance, p1, p2 with p = (v1.x, v2.x).
std::string trajectory_csv(const std::vector<TrajectorySample>& samples, const std::vector<int>& point_orbits);

/// gnuplot script plotting the projection and the distance to the nearest equilibrium.
std::string gnuplot_script(const std::string& csv_name);

std::string stability_json(const StabilityReport& rep);
/// Short human-readable summary.
std::string stability_text(const StabilityReport& rep);

}  // namespace hetnet
