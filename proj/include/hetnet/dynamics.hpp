#pragma once

#include "hetnet/graphs.hpp"
#include "hetnet/integrator.hpp"
#include "hetnet/vfield.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hetnet {

/// Eigen-direction of df(xi) inside one isotropy plane through xi, orthogonal to the axis.
struct PlaneEigen {
  std::size_t plane = 0;
  int orbit = -1;
  Vec4 direction = Vec4::Zero();
  double lambda = 0.0;
  double residual = 0.0;   // |J n - lambda n|
};

struct EquilibriumData {
  Vec4 xi = Vec4::Zero();
  std::size_t semiaxis = 0;
  int orbit = -1;           // semiaxis orbit
  Mat4 J = Mat4::Zero();
  double radial = 0.0;
  std::vector<PlaneEigen> planes;
  Eigen::Vector4cd eigenvalues;  // unlabelled, from a general eigensolver
  double residual = 0.0;          // |f(xi)|
  int iterations = 0;
};

/// Eigenvalues of an equilibrium relative to a path entering along one plane
/// orbit and leaving along another: contracting -c, expanding e, transverse t, radial r.
struct CycleEigen {
  double c = 0.0, e = 0.0, t = 0.0, r = 0.0;
  int in_orbit = -1, out_orbit = -1;
  std::vector<int> transverse_orbits;
  std::vector<double> transverse;  // all transverse eigenvalues; t is the largest
};

/// Newton iteration along the semiaxis, seeded at r = 1. Throws NumericalError
/// after 50 iterations without |f(xi)| < 1e-12.
EquilibriumData equilibrium_on(const EquivariantField& f, std::size_t semiaxis);
/// One equilibrium per semiaxis orbit (at the orbit representative).
std::vector<EquilibriumData> find_equilibria(const EquivariantField& f);

/// Throws StructuralError when the requested plane orbits do not pass through the equilibrium
/// or are ambiguous.
CycleEigen classify_for_cycle(const EquilibriumData& eq, int in_orbit, int out_orbit);

enum class Verdict { Cycle, Equilibrium, Escaped, Inconclusive };
std::string to_string(Verdict v);

struct AttractionOptions {
  double delta = 0.05;        // ball radius around equilibria
  double epsilon = 0.5;       // escape radius around the network
  double max_time = 1500.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int loops = 3;              // consecutive repetitions required
  double floor = 1e-8;        // distances below this count as converged
  double equilibrium_dwell = 200.0;
  std::size_t sample_stride = 0;  // keep every n-th step in Itinerary::samples (0: none)
};

struct ItineraryEntry {
  int eq_orbit = -1;
  std::size_t instance = 0;   // index into AttractionContext::points()
  double t_enter = 0.0, t_exit = -1.0;
  double dwell = 0.0;
  int exit_plane_orbit = -1;  // known once the next ball is entered
  double entry_distance = 0.0;  // distance to the incoming connection arcs at entry
  bool initial = false;         // x0 already inside the ball; its exit is not checked against the network
};

struct TrajectorySample {
  double t = 0.0;
  Vec4 x = Vec4::Zero();
  int nearest = -1;          // nearest equilibrium instance
  double distance = 0.0;     // to that equilibrium
};

struct Itinerary {
  std::vector<ItineraryEntry> entries;
  Verdict verdict = Verdict::Inconclusive;
  int cycle = -1;                 // index into AttractionContext::cycles()
  std::string cycle_name;
  std::vector<double> loop_distances;
  bool impossible_transition = false;
  double t_final = 0.0;
  Vec4 x_final = Vec4::Zero();
  std::size_t steps = 0;
  std::vector<TrajectorySample> samples;
  std::string note;
};

/// A connection: an arc in a plane of the network from one equilibrium instance to another.
struct ConnectionArc {
  std::size_t from = 0, to = 0;   // equilibrium instances
  int plane_orbit = -1;
  std::vector<Vec4> points;
};

/// Read-only data shared by all attraction runs on a field.
class AttractionContext {
 public:
  explicit AttractionContext(const EquivariantField& f, double arc_tol = 1e-11);

  const EquivariantField& field() const { return *field_; }
  const NetworkDiagram& network() const { return network_; }
  const std::vector<DirectedCycle>& cycles() const { return cycles_; }
  const std::vector<EquilibriumData>& equilibria() const { return equilibria_; }
  /// Equilibrium instance points (one per semiaxis) and their orbits.
  const std::vector<Vec4>& points() const { return points_; }
  const std::vector<int>& point_orbits() const { return point_orbits_; }
  const std::vector<ConnectionArc>& arcs() const { return arcs_; }

  /// Minimum distance to the arcs ending at the given instance.
  double distance_to_incoming(std::size_t instance, const Vec4& x) const;
  /// Cheap distance to the network: nearest unit circle of a network plane
  /// (the arcs stay within a few 1e-3 of these circles).
  double distance_to_network(const Vec4& x) const;
  /// Name such as "4-cycle L1 -> L2 -> L4 -> L3" built from semiaxis orbit ids.
  std::string cycle_name(int cycle) const;

 private:
  const EquivariantField* field_;
  NetworkDiagram network_;
  std::vector<DirectedCycle> cycles_;
  std::vector<EquilibriumData> equilibria_;
  std::vector<Vec4> points_;
  std::vector<int> point_orbits_;
  std::vector<ConnectionArc> arcs_;
  std::vector<std::vector<std::size_t>> incoming_;
};

/// Integrates from x0 and reports ball entries, exit planes and the verdict.
Itinerary detect_attraction(const AttractionContext& ctx, const Vec4& x0, const AttractionOptions& opt = {});

/// Random point within distance epsilon of the network: a point on a random arc
/// plus a uniformly random direction scaled by a uniform radius in (0, epsilon).
Vec4 random_seed_near_network(const AttractionContext& ctx, double epsilon, std::uint64_t seed);

}  // namespace hetnet
