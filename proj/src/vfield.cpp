#include "hetnet/vfield.hpp"

#include "hetnet/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <sstream>

namespace hetnet {

std::string to_string(AngularScale s) { return s == AngularScale::PerK ? "per-K" : "literal"; }

AngularScale parse_angular_scale(const std::string& s) {
  if (s == "per-K" || s == "per-k" || s == "perK") return AngularScale::PerK;
  if (s == "literal") return AngularScale::Literal;
  throw InputError("unknown angular scale '" + s + "' (expected per-K or literal)");
}

std::pair<double, double> planar_field(double r, double theta, int K, double A1, double A2, double scale_factor) {
  if (r < 0) throw InputError("planar_field: negative radius");
  const double kt = K * theta;
  return {r * (1 - r), scale_factor * std::sin(kt) * (A1 + A2 * std::cos(kt))};
}

namespace {

// cos(K theta), sin(K theta) from the chart coordinates without forming theta.
std::pair<double, double> harmonic(double a, double b, double r, int K) {
  const std::complex<double> z(a / r, b / r);
  std::complex<double> zk(1.0, 0.0);
  for (int k = 0; k < K; ++k) zk *= z;
  return {zk.real(), zk.imag()};
}

struct Local {
  double a, b, r, d;
  Vec4 xp;
};

Local chart(const Vec4& x, const PlaneInstance& p, double B) {
  Local l;
  l.a = p.u.dot(x);
  l.b = p.w.dot(x);
  l.xp = x - l.a * p.u - l.b * p.w;
  l.r = std::hypot(l.a, l.b);
  l.d = 1.0 + B * l.xp.squaredNorm();
  return l;
}

}  // namespace

Vec4 extend_planar(const Vec4& x, const PlaneInstance& p, double B) {
  const Local l = chart(x, p, B);
  if (l.r == 0.0) return Vec4::Zero();
  const auto [ck, sk] = harmonic(l.a, l.b, l.r, p.K);
  const double omega = p.S * sk * (p.A1 + p.A2 * ck);
  const double va = (1 - l.r) * l.a - omega * l.b;
  const double vb = (1 - l.r) * l.b + omega * l.a;
  return (va * p.u + vb * p.w) / l.d;
}

EquivariantField::EquivariantField(const FiniteGroup4& g, IsotropyData iso, FieldSpec spec,
                                   std::vector<PlaneInstance> planes, std::vector<OrientedPlaneOrbit> orientation)
    : group_(g),
      iso_(std::move(iso)),
      spec_(std::move(spec)),
      planes_(std::move(planes)),
      orientation_(std::move(orientation)) {}

Vec4 EquivariantField::operator()(const Vec4& x) const {
  Vec4 f = Vec4::Zero();
  for (const auto& p : planes_) f += extend_planar(x, p, spec_.B);
  return f;
}

Mat4 EquivariantField::jacobian(const Vec4& x) const {
  Mat4 J = Mat4::Zero();
  for (const auto& p : planes_) {
    const Local l = chart(x, p, spec_.B);
    Eigen::Matrix<double, 4, 2> uw;
    uw.col(0) = p.u;
    uw.col(1) = p.w;
    Eigen::Matrix2d Jv = Eigen::Matrix2d::Identity();
    double va = 0, vb = 0;
    if (l.r > 0.0) {
      const auto [ck, sk] = harmonic(l.a, l.b, l.r, p.K);
      const double omega = p.S * sk * (p.A1 + p.A2 * ck);
      // d omega / d theta, using cos(2K theta) = ck^2 - sk^2
      const double omega_t = p.S * p.K * (p.A1 * ck + p.A2 * (ck * ck - sk * sk));
      const double a = l.a, b = l.b, r = l.r, r2 = r * r;
      va = (1 - r) * a - omega * b;
      vb = (1 - r) * b + omega * a;
      // rows: (va, vb); columns: d/da, d/db
      Jv(0, 0) = -(a / r) * a + (1 - r) + omega_t * (-b / r2) * (-b);
      Jv(1, 0) = -(a / r) * b + omega_t * (-b / r2) * a + omega;
      Jv(0, 1) = -(b / r) * a + omega_t * (a / r2) * (-b) - omega;
      Jv(1, 1) = -(b / r) * b + (1 - r) + omega_t * (a / r2) * a;
    }
    const Vec4 v = va * p.u + vb * p.w;
    J += uw * Jv * uw.transpose() / l.d - (v * (2.0 * spec_.B * l.xp).transpose()) / (l.d * l.d);
  }
  return J;
}

Mat4 EquivariantField::jacobian_fd(const Vec4& x, double h) const {
  Mat4 J;
  for (int k = 0; k < 4; ++k) {
    Vec4 e = Vec4::Zero();
    e[k] = h;
    J.col(k) = ((*this)(x + e) - (*this)(x - e)) / (2 * h);
  }
  return J;
}

NetworkDiagram EquivariantField::network() const {
  const GroupGraph graph = build_graph(group_, iso_);
  NetworkDiagram n;
  n.num_vertices = graph.num_vertices;
  n.base = graph.type;
  for (const auto& e : graph.edges) {
    for (const auto& o : orientation_)
      if (o.orbit == e.plane_orbit) n.edges.push_back({o.source_orbit, o.target_orbit, o.orbit});
  }
  n.signature = canonical_signature(n);
  for (const auto& cand : enumerate_maximal_networks(graph))
    if (cand.signature == n.signature) n.label = cand.label;
  return n;
}

double EquivariantField::equivariance_residual(const std::vector<Vec4>& samples) const {
  double worst = 0.0;
  for (const auto& x : samples) {
    const Vec4 fx = (*this)(x);
    for (const auto& m : group_.matrices()) {
      const double res = ((*this)(m * x) - m * fx).norm() / (1.0 + fx.norm());
      worst = std::max(worst, res);
    }
  }
  return worst;
}

double EquivariantField::limit_eigenvalue(int plane_orbit, bool at_source) const {
  for (const auto& p : planes_)
    if (p.orbit == plane_orbit) return p.S * p.K * ((at_source ? p.A1 : -p.A1) + p.A2);
  throw InputError("plane orbit " + std::to_string(plane_orbit) + " carries no field");
}

namespace {

std::string entry_name(const FieldEntry& e, std::size_t k) {
  return e.name.empty() ? "entry " + std::to_string(k) : e.name;
}

}  // namespace

EquivariantField assemble_field(const FiniteGroup4& g, const IsotropyData& iso, const FieldSpec& spec) {
  if (!(spec.B >= 0.0)) throw InputError("B must be non-negative");
  std::vector<PlaneInstance> instances;
  std::vector<OrientedPlaneOrbit> orientation;
  std::set<int> covered;

  for (std::size_t k = 0; k < spec.entries.size(); ++k) {
    const FieldEntry& e = spec.entries[k];
    const std::string name = entry_name(e, k);
    const Subspace span = Subspace::span({e.span[0], e.span[1]});
    if (span.dim() != 2) throw InputError(name + ": span vectors are not independent");
    const auto p = iso.find_plane(span);
    if (p < 0) throw InputError(name + ": span is not an isotropy plane of the group");
    const IsotropyPlane& plane = iso.planes[static_cast<std::size_t>(p)];
    const int orbit = plane.orbit_id;
    if (!covered.insert(orbit).second)
      throw InputError(name + ": plane orbit " + std::to_string(orbit) + " has more than one entry");
    const auto& K = iso.plane_orbits[static_cast<std::size_t>(orbit)].K;
    if (!K) throw InputError(name + ": the plane's normalizer does not act dihedrally, no connection can be placed");
    if (e.K && *e.K != *K)
      throw InputError(name + ": K = " + std::to_string(*e.K) + " but the plane has K = " + std::to_string(*K));
    if (!(e.A1 + e.A2 > 0.0) || !(-e.A1 + e.A2 < 0.0))
      throw InputError(name + ": sign of A1+A2 must be positive and sign of -A1+A2 negative");

    // Source semiaxis from the explicit direction and/or the angular offset.
    const Vec4 b0 = span.basis.col(0);
    const Vec4 b1 = span.basis.col(1);
    std::optional<Vec4> dir;
    if (e.offset) {
      const Vec4 s0 = e.span[0].normalized();
      Vec4 s1 = e.span[1] - e.span[1].dot(s0) * s0;
      s1.normalize();
      dir = std::cos(*e.offset) * s0 + std::sin(*e.offset) * s1;
    }
    if (e.source) {
      if (e.source->norm() == 0.0) throw InputError(name + ": zero source direction");
      const Vec4 s = e.source->normalized();
      if (!span.contains(s, 1e-8)) throw InputError(name + ": source direction does not lie in the plane");
      if (dir && (*dir - s).norm() > 1e-8) throw InputError(name + ": offset and source direction disagree");
      dir = s;
    }
    if (!dir) throw InputError(name + ": needs a source direction or an angular offset");
    const auto sa = iso.find_semiaxis(*dir);
    if (sa < 0) throw InputError(name + ": source direction is not a semiaxis");
    const Semiaxis& src = iso.semiaxes[static_cast<std::size_t>(sa)];

    PlaneInstance base;
    base.plane = static_cast<std::size_t>(p);
    base.orbit = orbit;
    base.entry = k;
    base.K = *K;
    base.A1 = e.A1;
    base.A2 = e.A2;
    base.S = spec.scale == AngularScale::PerK ? 1.0 / *K : 1.0;
    base.u = src.direction;
    Vec4 w = b0 - b0.dot(base.u) * base.u;
    if (w.norm() < 0.5) w = b1 - b1.dot(base.u) * base.u;
    base.w = w.normalized();

    const double phi = std::numbers::pi / *K;
    const auto tgt = iso.find_semiaxis(std::cos(phi) * base.u + std::sin(phi) * base.w);
    if (tgt < 0) throw StructuralError(name + ": no semiaxis at angle pi/K from the source");
    orientation.push_back({orbit, src.orbit_id, iso.semiaxes[static_cast<std::size_t>(tgt)].orbit_id});

    // One instance per plane of the orbit; the representative is the
    // lexicographically smallest element mapping the entry's plane onto it.
    for (std::size_t q : iso.plane_orbits[static_cast<std::size_t>(orbit)].members) {
      std::optional<std::size_t> rep;
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (!plane.space.transformed(g[j]).same_as(iso.planes[q].space)) continue;
        if (!rep || lex_less(g[j], g[*rep])) rep = j;
      }
      if (!rep) throw StructuralError(name + ": plane orbit member not reachable from the entry's plane");
      PlaneInstance inst = base;
      inst.plane = q;
      inst.coset_rep = *rep;
      inst.u = g[*rep] * base.u;
      inst.w = g[*rep] * base.w;
      instances.push_back(inst);
    }
  }

  for (std::size_t o = 0; o < iso.plane_orbits.size(); ++o) {
    const int id = static_cast<int>(o);
    if (covered.count(id) || !iso.plane_orbits[o].K) continue;
    if (!iso.semiaxis_orbits_in_plane(iso.plane_orbits[o].rep()).empty())
      throw InputError("plane orbit " + std::to_string(o) + " has no field entry");
  }
  return EquivariantField(g, iso, spec, std::move(instances), std::move(orientation));
}

EquivariantField assemble_field(const FiniteGroup4& g, const FieldSpec& spec) {
  return assemble_field(g, analyze_isotropy(g), spec);
}

}  // namespace hetnet
