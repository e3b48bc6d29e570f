#pragma once

#include "hetnet/group4.hpp"

#include <optional>
#include <vector>

namespace hetnet {

struct IsotropyPlane {
  Subspace space;                // orthonormal basis in space.basis (4x2)
  Subgroup sigma;                // pointwise stabilizer
  Subgroup normalizer;           // N(sigma), equal to the setwise stabilizer
  std::optional<int> K;          // N/sigma acting on the plane is D_K; empty if not dihedral
  int orbit_id = -1;
};

struct Semiaxis {
  Vec4 direction = Vec4::Zero();
  Subgroup delta;
  bool simple = false;
  bool paired = false;           // -direction lies in the same group orbit
  int orbit_id = -1;
  int axis_id = -1;              // index into IsotropyData::axes
};

enum class IsotypicCase { One = 1, Two = 2, Three = 3, TwoOrThree = 23, Other = 0 };

struct IsotypicComponent {
  int irreducible_dim = 1;
  int multiplicity = 1;
  bool trivial = false;          // the Fix(Delta) component
  Subspace space;
};

struct IsotypicReport {
  std::vector<IsotypicComponent> components;
  IsotypicCase label = IsotypicCase::Other;
  int total_dim() const;
};

struct PlaneOrbit {
  std::vector<std::size_t> members;  // indices into IsotropyData::planes, representative first
  std::optional<int> K;
  std::size_t rep() const { return members.front(); }
};

struct SemiaxisOrbit {
  std::vector<std::size_t> members;  // indices into IsotropyData::semiaxes, representative first
  bool paired = false;
  bool simple = false;
  std::size_t rep() const { return members.front(); }
};

struct IsotropyData {
  std::vector<IsotropyPlane> planes;
  std::vector<PlaneOrbit> plane_orbits;
  std::vector<Subspace> axes;
  std::vector<Semiaxis> semiaxes;
  std::vector<SemiaxisOrbit> semiaxis_orbits;

  /// Semiaxis orbits with a member in the given plane, sorted.
  std::vector<int> semiaxis_orbits_in_plane(std::size_t plane) const;
  /// Plane orbits with a member containing the given semiaxis.
  std::vector<int> plane_orbits_through(std::size_t semiaxis) const;
  std::ptrdiff_t find_plane(const Subspace& s) const;
  std::ptrdiff_t find_semiaxis(const Vec4& v) const;
};

/// {gamma : |gamma x - x| < 1e-9 |x|}. Throws InputError on x = 0.
Subgroup isotropy_subgroup(const FiniteGroup4& g, const Vec4& x);

/// All isotropy subspaces Fix(Sigma) of the given dimension (1, 2 or 3).
std::vector<Subspace> isotropy_subspaces(const FiniteGroup4& g, int dim);

std::vector<IsotropyPlane> enumerate_isotropy_planes(const FiniteGroup4& g);
std::vector<Semiaxis> enumerate_semiaxes(const FiniteGroup4& g, const std::vector<IsotropyPlane>& planes);

/// Throws InputError when dim Fix(delta) != 1. When the split is 1+1+2 the
/// incoming/outgoing planes through the axis decide between cases 2 and 3.
IsotypicReport isotypic_decomposition(const FiniteGroup4& g, const Subgroup& delta,
                                      const Subspace* incoming = nullptr, const Subspace* outgoing = nullptr);
bool is_simple_semiaxis(const FiniteGroup4& g, const Semiaxis& s);

/// K with N(sigma)/sigma acting on the plane as D_K. Throws StructuralError otherwise.
int dihedral_parameter(const FiniteGroup4& g, const IsotropyPlane& p);

/// Full analysis: planes, axes, semiaxes and their orbits.
IsotropyData analyze_isotropy(const FiniteGroup4& g);

}  // namespace hetnet
