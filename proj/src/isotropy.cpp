#include "hetnet/isotropy.hpp"

#include "hetnet/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

namespace hetnet {

int IsotypicReport::total_dim() const {
  int d = 0;
  for (const auto& c : components) d += c.irreducible_dim * c.multiplicity;
  return d;
}

std::vector<int> IsotropyData::semiaxis_orbits_in_plane(std::size_t plane) const {
  std::vector<int> out;
  for (const auto& s : semiaxes)
    if (planes[plane].space.contains(s.direction)) out.push_back(s.orbit_id);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> IsotropyData::plane_orbits_through(std::size_t semiaxis) const {
  std::vector<int> out;
  for (const auto& p : planes)
    if (p.space.contains(semiaxes[semiaxis].direction)) out.push_back(p.orbit_id);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::ptrdiff_t IsotropyData::find_plane(const Subspace& s) const {
  for (std::size_t i = 0; i < planes.size(); ++i)
    if (planes[i].space.same_as(s)) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

std::ptrdiff_t IsotropyData::find_semiaxis(const Vec4& v) const {
  const Vec4 u = v.normalized();
  for (std::size_t i = 0; i < semiaxes.size(); ++i)
    if ((semiaxes[i].direction - u).norm() < 1e-8) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

Subgroup isotropy_subgroup(const FiniteGroup4& g, const Vec4& x) {
  const double n = x.norm();
  if (n == 0.0) throw InputError("isotropy subgroup of the zero vector is undefined");
  Subgroup out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if ((g[k] * x - x).norm() < tol::kElementEq * n) out.push_back(k);
  return out;
}

namespace {

Subspace fix_of(const FiniteGroup4& g, const Subgroup& h) {
  Mat4 acc = Mat4::Zero();
  for (auto i : h) {
    const Mat4 d = g[i] - Mat4::Identity();
    acc += d.transpose() * d;
  }
  return Subspace::null_space_of_psd(acc);
}

// Every Fix(Sigma) is an intersection of fixed spaces of single elements, so
// the intersection closure of those is a complete candidate list.
SubspaceSet candidate_subspaces(const FiniteGroup4& g) {
  SubspaceSet set;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k == g.identity_index()) continue;
    const auto f = Subspace::fixed_space(g[k]);
    if (f.dim() >= 1 && f.dim() <= 3) set.insert(f);
  }
  std::vector<std::size_t> frontier(set.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto i : frontier) {
      for (std::size_t j = 0; j < set.size(); ++j) {
        if (i == j) continue;
        const Subspace& a = set[i];
        const Subspace& b = set[j];
        if (a.dim() == 1 && b.dim() == 1) continue;
        const auto x = Subspace::intersect(a, b);
        if (x.dim() < 1 || x.same_as(a) || x.same_as(b)) continue;
        bool inserted = false;
        const auto idx = set.insert(x, &inserted);
        if (inserted) next.push_back(idx);
      }
    }
    frontier = std::move(next);
  }
  return set;
}

Vec4 canonical_direction(const Vec4& v) {
  Vec4 u = v.normalized();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(u[i]) > 1e-9) return u[i] > 0 ? u : Vec4(-u);
  }
  return u;
}

std::vector<Subspace> filter_isotropy(const FiniteGroup4& g, const SubspaceSet& cands, int dim) {
  std::vector<Subspace> out;
  for (const auto& c : cands.items()) {
    if (c.dim() != dim) continue;
    const auto sigma = pointwise_stabilizer(g, c);
    if (fix_of(g, sigma).same_as(c)) out.push_back(c);
  }
  return out;
}

std::vector<IsotropyPlane> planes_from(const FiniteGroup4& g, const std::vector<Subspace>& spaces) {
  std::vector<IsotropyPlane> planes;
  for (const auto& s : spaces) {
    IsotropyPlane p;
    p.space = s;
    p.sigma = pointwise_stabilizer(g, s);
    p.normalizer = normalizer(g, p.sigma);
    try {
      p.K = dihedral_parameter(g, p);
    } catch (const StructuralError&) {
      p.K.reset();
    }
    planes.push_back(std::move(p));
  }
  int next = 0;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (planes[i].orbit_id >= 0) continue;
    for (const auto& m : g.matrices()) {
      const auto img = planes[i].space.transformed(m);
      for (auto& q : planes)
        if (q.orbit_id < 0 && q.space.same_as(img)) q.orbit_id = next;
    }
    ++next;
  }
  return planes;
}

std::vector<Semiaxis> semiaxes_from(const FiniteGroup4& g, const std::vector<Subspace>& axes) {
  std::vector<Semiaxis> out;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Vec4 v = canonical_direction(axes[a].basis.col(0));
    const auto delta = pointwise_stabilizer(g, axes[a]);
    const bool simple = isotypic_decomposition(g, delta).label == IsotypicCase::One;
    for (double sgn : {1.0, -1.0}) {
      Semiaxis s;
      s.direction = sgn * v;
      s.delta = delta;
      s.simple = simple;
      s.axis_id = static_cast<int>(a);
      out.push_back(std::move(s));
    }
  }
  VectorSet dirs;
  for (const auto& s : out) dirs.insert(s.direction);
  int next = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].orbit_id >= 0) continue;
    for (const auto& m : g.matrices()) {
      const auto j = dirs.find(m * out[i].direction);
      if (j >= 0) out[static_cast<std::size_t>(j)].orbit_id = next;
    }
    ++next;
  }
  for (std::size_t i = 0; i < out.size(); i += 2) out[i].paired = out[i + 1].paired = out[i].orbit_id == out[i + 1].orbit_id;
  return out;
}

}  // namespace

std::vector<Subspace> isotropy_subspaces(const FiniteGroup4& g, int dim) {
  return filter_isotropy(g, candidate_subspaces(g), dim);
}

int dihedral_parameter(const FiniteGroup4& g, const IsotropyPlane& p) {
  const auto& B = p.space.basis;
  if (B.cols() != 2) throw StructuralError("dihedral parameter needs a plane");
  std::vector<Eigen::Matrix2d> seen;
  int rot = 0, ref = 0;
  for (auto k : p.normalizer) {
    const Eigen::Matrix2d m = B.transpose() * g[k] * B;
    if ((m * m.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > 1e-8)
      throw StructuralError("normalizer element does not act orthogonally on the plane");
    bool dup = false;
    for (const auto& s : seen)
      if ((s - m).cwiseAbs().maxCoeff() < 1e-8) dup = true;
    if (dup) continue;
    seen.push_back(m);
    (m.determinant() > 0 ? rot : ref)++;
  }
  if (ref == 0) {
    if (rot == 1) return 0;
    throw StructuralError("N/Sigma acts on the plane as a cyclic group of order " + std::to_string(rot));
  }
  if (ref != rot) throw StructuralError("N/Sigma acting on the plane is not dihedral");
  return ref;
}

std::vector<IsotropyPlane> enumerate_isotropy_planes(const FiniteGroup4& g) {
  return planes_from(g, isotropy_subspaces(g, 2));
}

IsotypicReport isotypic_decomposition(const FiniteGroup4& g, const Subgroup& delta, const Subspace* incoming,
                                      const Subspace* outgoing) {
  const Subspace fix = fix_of(g, delta);
  if (fix.dim() != 1) throw InputError("isotypic decomposition requires dim Fix = 1, got " + std::to_string(fix.dim()));

  // Generic symmetric element of the commutant; its eigenspaces are irreducible.
  std::mt19937_64 rng(20240531);
  std::normal_distribution<double> nd;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
  Mat4 x = Mat4::Zero();
  for (auto k : delta) x += g[k] * a * g[k].transpose();
  x /= static_cast<double>(delta.size());
  Eigen::SelfAdjointEigenSolver<Mat4> es(x);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  std::vector<Subspace> pieces;
  for (int i = 0; i < 4;) {
    int j = i + 1;
    while (j < 4 && ev[j] - ev[j - 1] < 1e-7 * scale) ++j;
    std::vector<Vec4> vs;
    for (int k = i; k < j; ++k) vs.push_back(es.eigenvectors().col(k));
    pieces.push_back(Subspace::span(vs));
    i = j;
  }

  std::vector<std::vector<double>> chars;
  for (const auto& p : pieces) {
    std::vector<double> c;
    for (auto k : delta) c.push_back((p.projector * g[k]).trace());
    chars.push_back(std::move(c));
  }
  IsotypicReport rep;
  std::vector<char> used(pieces.size(), 0);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (used[i]) continue;
    IsotypicComponent comp;
    comp.irreducible_dim = pieces[i].dim();
    comp.multiplicity = 0;
    std::vector<Vec4> vs;
    for (std::size_t j = i; j < pieces.size(); ++j) {
      if (used[j] || pieces[j].dim() != pieces[i].dim()) continue;
      bool same = true;
      for (std::size_t k = 0; k < chars[i].size(); ++k)
        if (std::abs(chars[i][k] - chars[j][k]) > 1e-6) same = false;
      if (!same) continue;
      used[j] = 1;
      ++comp.multiplicity;
      for (int c = 0; c < pieces[j].dim(); ++c) vs.push_back(pieces[j].basis.col(c));
    }
    comp.space = Subspace::span(vs);
    comp.trivial = std::all_of(chars[i].begin(), chars[i].end(),
                               [&](double v) { return std::abs(v - comp.irreducible_dim) < 1e-6; });
    rep.components.push_back(std::move(comp));
  }

  std::vector<int> dims;
  for (const auto& c : rep.components) dims.push_back(c.space.dim());
  std::sort(dims.begin(), dims.end());
  if (dims == std::vector<int>{1, 1, 1, 1}) {
    rep.label = IsotypicCase::One;
  } else if (dims == std::vector<int>{1, 1, 2}) {
    rep.label = IsotypicCase::TwoOrThree;
    const IsotypicComponent* line = nullptr;
    for (const auto& c : rep.components)
      if (!c.trivial && c.space.dim() == 1) line = &c;
    if (line && incoming && incoming->contains(line->space.basis.col(0))) rep.label = IsotypicCase::Two;
    else if (line && outgoing && outgoing->contains(line->space.basis.col(0))) rep.label = IsotypicCase::Three;
  } else {
    rep.label = IsotypicCase::Other;
  }
  return rep;
}

bool is_simple_semiaxis(const FiniteGroup4& g, const Semiaxis& s) {
  return isotypic_decomposition(g, s.delta).label == IsotypicCase::One;
}

std::vector<Semiaxis> enumerate_semiaxes(const FiniteGroup4& g, const std::vector<IsotropyPlane>& planes) {
  (void)planes;  // axes are found from the same candidate closure as the planes
  return semiaxes_from(g, isotropy_subspaces(g, 1));
}

IsotropyData analyze_isotropy(const FiniteGroup4& g) {
  IsotropyData d;
  const auto cands = candidate_subspaces(g);
  d.planes = planes_from(g, filter_isotropy(g, cands, 2));
  d.axes = filter_isotropy(g, cands, 1);
  d.semiaxes = semiaxes_from(g, d.axes);
  int np = 0;
  for (const auto& p : d.planes) np = std::max(np, p.orbit_id + 1);
  d.plane_orbits.resize(static_cast<std::size_t>(np));
  for (std::size_t i = 0; i < d.planes.size(); ++i) d.plane_orbits[static_cast<std::size_t>(d.planes[i].orbit_id)].members.push_back(i);
  for (auto& o : d.plane_orbits) o.K = d.planes[o.rep()].K;
  int ns = 0;
  for (const auto& s : d.semiaxes) ns = std::max(ns, s.orbit_id + 1);
  d.semiaxis_orbits.resize(static_cast<std::size_t>(ns));
  for (std::size_t i = 0; i < d.semiaxes.size(); ++i)
    d.semiaxis_orbits[static_cast<std::size_t>(d.semiaxes[i].orbit_id)].members.push_back(i);
  for (auto& o : d.semiaxis_orbits) {
    o.paired = d.semiaxes[o.rep()].paired;
    o.simple = d.semiaxes[o.rep()].simple;
  }
  return d;
}

}  // namespace hetnet
