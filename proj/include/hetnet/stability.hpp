#pragma once

#include "hetnet/dynamics.hpp"
#include "hetnet/graphs.hpp"
#include "hetnet/vfield.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hetnet {

/// Non-radial eigenvalues at one equilibrium orbit, keyed by the plane orbit
/// carrying the eigendirection.
struct NodeEigen {
  int eq_orbit = -1;
  double radial = 0.0;
  std::vector<std::pair<int, double>> planes;  // (plane orbit, eigenvalue)

  double lambda(int plane_orbit) const;  // throws StructuralError if absent
};

NodeEigen node_eigen(const EquilibriumData& eq);

struct CycleNode {
  int eq_orbit = -1;
  int in_orbit = -1, out_orbit = -1;  // plane orbits of the incoming and outgoing connections
  double c = 0.0, e = 0.0, t = 0.0;   // eigenvalues -c (incoming), e (outgoing), t (transverse)
};

struct CycleSpec {
  std::string name;
  std::vector<CycleNode> nodes;
  bool typeA = true;  // every plane isotropy group of the cycle has order 2
};

/// Cycle data from per-node eigenvalues; t is the largest transverse eigenvalue.
CycleSpec make_cycle_spec(const NetworkDiagram& n, const DirectedCycle& cycle, const std::vector<NodeEigen>& eig,
                          bool typeA = true);
/// True when every plane orbit used by the cycle has a pointwise stabilizer of order 2.
bool is_type_a(const IsotropyData& iso, const NetworkDiagram& n, const DirectedCycle& cycle);

struct CondstResult {
  bool holds = false;
  bool degenerate = false;         // product within 1e-9 of 1 or some e_j - t_j within 1e-9
  double product = 1.0;            // prod c_j / e_j
  std::vector<double> ratios;      // c_j / e_j
  std::string witness;             // first violated clause, or the degeneracy
};

/// prod (c_j/e_j) > 1 and e_j > t_j for all j. Throws InputError for
/// non-type-A cycles or non-positive c_j, e_j.
CondstResult check_condst(const CycleSpec& c);

enum class CycleStability { Unstable, FAS, EAS, NoVerdict };
enum class NetworkStability { NotFAS, FAS, EAS, NoVerdict };
std::string to_string(CycleStability s);
std::string to_string(NetworkStability s);

/// Type-A cycles: f.a.s. and e.a.s. coincide, so condst decides both.
CycleStability cycle_stability(const CondstResult& r);

struct NodePrincipal {
  int eq_orbit = -1;
  int principal_orbit = -1;      // plane orbit of the maximal eigenvalue
  double principal_lambda = 0.0;
  int principal_edge = -1;       // network edge leaving along it, or -1
  int minus_orbit = -1;          // plane orbit of the minimal non-radial eigenvalue
  double minus_lambda = 0.0;
};

struct PrincipalStructure {
  std::vector<NodePrincipal> nodes;       // one per network vertex
  std::vector<int> principal_edges;       // indices into NetworkDiagram::edges
  std::vector<int> minus_principal_edges; // edges arriving along the minus-principal direction
  std::vector<int> principal_cycles;      // indices into the cycle list
  std::vector<int> minus_principal_cycles;

  bool is_principal_edge(int edge) const;
  bool is_principal_cycle(int cycle) const;
};

/// Throws DegenerateError when the maximal or minimal non-radial eigenvalue
/// at a vertex is tied within 1e-9.
PrincipalStructure principal_structure(const NetworkDiagram& n, const std::vector<DirectedCycle>& cycles,
                                       const std::vector<NodeEigen>& eig);

struct NetworkVerdict {
  bool holds = false;
  bool degenerate = false;               // some deciding condst evaluation was marginal
  bool principal_cycles_fas = false;     // clause (i) of the e.a.s. test
  bool principal_connections = false;    // clause (ii)
  std::string witness;
};

/// e.a.s. iff every principal subcycle satisfies condst and every vertex has its
/// principal connection in the network. Throws InputError for non-type-A cycles.
NetworkVerdict network_eas(const NetworkDiagram& n, const std::vector<CycleSpec>& cycles,
                           const PrincipalStructure& ps);
/// f.a.s. iff some subcycle satisfies condst.
NetworkVerdict network_fas(const std::vector<CycleSpec>& cycles);

struct CycleReport {
  CycleSpec spec;
  CondstResult condst;
  CycleStability stability = CycleStability::NoVerdict;
  bool principal = false;
  bool minus_principal = false;
};

struct StabilityReport {
  NetworkDiagram network;
  std::vector<DirectedCycle> cycles;
  std::vector<EquilibriumData> equilibria;
  std::vector<NodeEigen> eigen;
  std::vector<CycleReport> cycle_reports;
  bool principal_ok = false;          // false when principal_structure hit a degeneracy
  PrincipalStructure principal;
  NetworkVerdict eas, fas;
  NetworkStability verdict = NetworkStability::NoVerdict;
  std::vector<std::string> inconsistencies;  // condst-true cycles that are not principal, e.a.s. without f.a.s.
  std::vector<std::string> notes;
};

/// Equilibria, cycles, condst, principal structure and both network verdicts.
StabilityReport analyze_stability(const EquivariantField& f);

// ---------------------------------------------------------------------------
// Local maps near an equilibrium.

/// phi(x1, x2) = (A x1^alpha, A2 x2 |x1|^beta) from the incoming section
/// (distance delta along the contracting direction) to the outgoing one.
struct LocalMapData {
  double alpha = 0.0;
  double beta = 0.0;
  double A = 1.0;
  double A2 = 1.0;

  std::pair<double, double> operator()(double x1, double x2) const;
};

/// Linearised flow: alpha = c/e, beta = -t/e, A = delta^(1 - alpha), A2 = delta^(-beta).
/// Throws InputError when e <= 0, c <= 0 or delta <= 0.
LocalMapData local_map_exponents(double c, double e, double t, double delta);
LocalMapData local_map_exponents(const CycleNode& node, double delta);

struct LocalMapFitOptions {
  double delta = 0.05;
  double xe_min = 1e-5, xe_max = 1e-4;  // smallest-decade window of x_e on the incoming section
  int samples = 9;
  double tau = 1e-6;                    // x_t offset for the beta fit
  double rel_tol = 1e-11;
  double abs_tol = 1e-20;                // below the smallest exit coordinates, above round-off in f
};

struct LocalMapFit {
  LocalMapData map;
  double alpha_residual = 0.0;  // rms residual of the log-log fits
  double beta_residual = 0.0;
  std::vector<double> xe, yc, gt;  // samples: x_e, exit c-coordinate, antisymmetric t-part
};

/// Integrates the nonlinear field from the incoming to the outgoing section of
/// `node` and fits alpha and beta by least squares on log-log data. The beta fit
/// uses (y_t(+tau) - y_t(-tau))/2, which removes the part of y_t forced at x_t = 0.
LocalMapFit fit_local_map(const EquivariantField& f, const EquilibriumData& eq, const CycleNode& node,
                          const LocalMapFitOptions& opt = {});

/// Linear part of the global map from the outgoing section of `from` to the
/// incoming section of the next node, in (c, t) -> (e, t) section coordinates,
/// by central differences of the flow.
Eigen::Matrix2d global_map_jacobian(const EquivariantField& f, const EquilibriumData& from, const CycleNode& from_node,
                                    const EquilibriumData& to, const CycleNode& to_node, double delta = 0.05,
                                    double h = 1e-6);

/// Least-squares slope and intercept of y against x, plus the rms residual.
struct LineFit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hetnet
