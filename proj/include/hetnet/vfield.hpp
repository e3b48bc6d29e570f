#pragma once

#include "hetnet/graphs.hpp"
#include "hetnet/group4.hpp"
#include "hetnet/isotropy.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hetnet {

/// How the angular component of the planar field is scaled.
/// PerK divides by K so that the in-plane eigenvalues at the equilibria are
/// A1 + A2 and -A1 + A2; Literal uses sin(K theta)(A1 + A2 cos(K theta)) as is.
enum class AngularScale { PerK, Literal };

std::string to_string(AngularScale s);
AngularScale parse_angular_scale(const std::string& s);

/// One entry per plane orbit.
struct FieldEntry {
  std::string name;                 // free-form label, e.g. "P1"
  std::array<Vec4, 2> span;         // two vectors spanning a plane of the orbit
  std::optional<Vec4> source;       // semiaxis the connection leaves from
  std::optional<double> offset;     // angle of the source from span[0], radians
  std::optional<int> K;             // checked against the isotropy data when given
  double A1 = 0.0;
  double A2 = 0.0;
};

struct FieldSpec {
  std::string name;
  double B = 100.0;
  AngularScale scale = AngularScale::PerK;
  std::vector<FieldEntry> entries;
};

/// (dr/dt, dtheta/dt) of the planar field, with angular factor `scale_factor`.
std::pair<double, double> planar_field(double r, double theta, int K, double A1, double A2,
                                       double scale_factor = 1.0);

/// A single plane of the assembled field with its polar chart.
struct PlaneInstance {
  std::size_t plane = 0;            // index into IsotropyData::planes
  int orbit = -1;                   // plane orbit id
  std::size_t entry = 0;            // index into FieldSpec::entries
  Vec4 u = Vec4::Zero();            // theta = 0, a source semiaxis
  Vec4 w = Vec4::Zero();            // theta = pi/2
  int K = 1;
  double A1 = 0.0, A2 = 0.0;
  double S = 1.0;                   // angular scale factor
  std::size_t coset_rep = 0;        // group element mapping the representative plane here
};

/// g_j(x): planar field on the plane's chart, suppressed by 1/(1 + B |x_perp|^2).
Vec4 extend_planar(const Vec4& x, const PlaneInstance& p, double B);

/// Direction of each edge of the network realised by the field.
struct OrientedPlaneOrbit {
  int orbit = -1;
  int source_orbit = -1;            // semiaxis orbit at theta = 0
  int target_orbit = -1;            // semiaxis orbit at theta = pi/K
};

class EquivariantField {
 public:
  EquivariantField(const FiniteGroup4& g, IsotropyData iso, FieldSpec spec, std::vector<PlaneInstance> planes,
                   std::vector<OrientedPlaneOrbit> orientation);

  Vec4 operator()(const Vec4& x) const;
  Mat4 jacobian(const Vec4& x) const;
  /// Central differences with the given step.
  Mat4 jacobian_fd(const Vec4& x, double h = 1e-6) const;

  double B() const { return spec_.B; }
  const FieldSpec& spec() const { return spec_; }
  const FiniteGroup4& group() const { return group_; }
  const IsotropyData& isotropy() const { return iso_; }
  const std::vector<PlaneInstance>& instances() const { return planes_; }
  const std::vector<OrientedPlaneOrbit>& orientation() const { return orientation_; }

  /// The realised network as a directed diagram over semiaxis orbits.
  NetworkDiagram network() const;
  /// Max over group elements and sample points of |f(gx) - g f(x)| / (1 + |f(x)|).
  double equivariance_residual(const std::vector<Vec4>& samples) const;

  /// B -> infinity eigenvalue of the in-plane angular direction at a semiaxis
  /// of the given plane orbit: S K (A1 + A2) at the source, S K (-A1 + A2) at the target.
  double limit_eigenvalue(int plane_orbit, bool at_source) const;

 private:
  FiniteGroup4 group_;
  IsotropyData iso_;
  FieldSpec spec_;
  std::vector<PlaneInstance> planes_;
  std::vector<OrientedPlaneOrbit> orientation_;
};

/// f(x) = sum over plane orbits and coset representatives of gamma g_j(gamma^-1 x).
/// Throws InputError on spec/orbit mismatch or violated sign conditions.
EquivariantField assemble_field(const FiniteGroup4& g, const IsotropyData& iso, const FieldSpec& spec);
EquivariantField assemble_field(const FiniteGroup4& g, const FieldSpec& spec);

}  // namespace hetnet
