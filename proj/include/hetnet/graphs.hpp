#pragma once

#include "hetnet/group4.hpp"
#include "hetnet/isotropy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hetnet {

enum class GraphType { I, II, III, IV, V, VI, NonSimple, Empty, Unrecognized };

std::string to_string(GraphType t);

struct GraphEdge {
  int plane_orbit = -1;
  int u = -1, v = -1;  // semiaxis orbit ids; u == v for a loop
  bool loop() const { return u == v; }
};

struct GroupGraph {
  int num_vertices = 0;
  std::vector<GraphEdge> edges;
  std::vector<int> non_intersecting_planes;  // plane orbits containing no semiaxis
  std::vector<int> hyperedge_planes;         // plane orbits meeting more than two semiaxis orbits
  bool simple = false;
  bool rotation_group = true;
  GraphType type = GraphType::Empty;

  /// Number of edges joining u and v (loops count once).
  int multiplicity(int u, int v) const;
  int degree(int u) const;  // a loop adds 2
};

GroupGraph build_graph(const FiniteGroup4& g, const IsotropyData& iso);
GroupGraph build_graph(const FiniteGroup4& g);
GraphType classify_graph(const GroupGraph& g);

struct ExpectedType {
  bool listed = false;
  GraphType type = GraphType::Unrecognized;
  std::string row;     // human-readable row description
  std::string reason;  // why it is not listed, when applicable
};

/// Lookup in the classification tables (rotation groups and the two reflection extensions).
ExpectedType expected_type(const Presentation& p);

struct DirectedEdge {
  int from = -1, to = -1;
  int plane_orbit = -1;
};

struct NetworkDiagram {
  int num_vertices = 0;
  std::vector<DirectedEdge> edges;
  GraphType base = GraphType::Unrecognized;
  std::string label;
  std::vector<int> signature;  // canonical directed count matrix, row-major

  /// count of edges from -> to
  int count(int from, int to) const;
};

/// Simple directed cycle: edge indices into NetworkDiagram::edges in traversal order.
struct DirectedCycle {
  std::vector<int> edges;
  std::vector<int> vertices;  // vertices[k] is the source of edges[k]
};

/// Every edge-orientation (loops left as they are) in which every edge lies on
/// a directed cycle, up to graph automorphisms.
std::vector<NetworkDiagram> enumerate_maximal_networks(const GroupGraph& g);

/// All simple directed cycles.
std::vector<DirectedCycle> subcycles(const NetworkDiagram& n);

/// True when every edge lies on a directed cycle and the diagram is connected.
bool is_network(const NetworkDiagram& n);

/// Canonical signature of a directed multigraph under vertex permutations that
/// preserve the underlying undirected multigraph.
std::vector<int> canonical_signature(const NetworkDiagram& n);

}  // namespace hetnet
