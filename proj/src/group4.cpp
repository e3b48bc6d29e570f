#include "hetnet/group4.hpp"

#include "hetnet/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hetnet {

namespace {

std::size_t mat_hash(const Mat4& m) { return rounded_hash(m.data(), 16); }

bool mat_equal(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff() < tol::kElementEq; }

void require_unit(const Quaternion& q, const char* what) {
  if (!q.is_unit()) throw InputError(std::string(what) + " quaternion " + q.str() + " is not a unit quaternion");
}

Quaternion basis_quat(int i) {
  Quaternion q;
  q.c[static_cast<std::size_t>(i)] = 1.0;
  return q;
}

}  // namespace

Mat4 rotation_matrix(const Quaternion& l, const Quaternion& r) {
  require_unit(l, "left");
  require_unit(r, "right");
  const Quaternion rinv = qconj(r);
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.col(i) = (l * basis_quat(i) * rinv).as_vec();
  return m;
}

Mat4 reflection_matrix(const Quaternion& a, const Quaternion& b) {
  require_unit(a, "reflection");
  require_unit(b, "reflection");
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.col(i) = (a * qconj(basis_quat(i)) * b).as_vec();
  return m;
}

GroupElement4 GroupElement4::rotation(const Quaternion& l, const Quaternion& r) {
  return {ElementKind::Rotation, l, r, rotation_matrix(l, r)};
}

GroupElement4 GroupElement4::reflection(const Quaternion& a, const Quaternion& b) {
  return {ElementKind::Reflection, a, b, reflection_matrix(a, b)};
}

std::string GroupElement4::str() const {
  std::string s = "(" + a.str() + ";" + b.str() + ")";
  return kind == ElementKind::Reflection ? s + "*" : s;
}

std::string Presentation::str() const {
  std::string s = "(" + L.str() + "|" + LK.str() + ";" + R.str() + "|" + RK.str() + ")";
  if (s_index) s += "_" + std::to_string(*s_index);
  if (sigma) s += "*";
  return s;
}

FiniteGroup4::FiniteGroup4(const std::vector<Mat4>& matrices, bool check_closure) {
  for (const auto& m : matrices) {
    if (index_of(m) >= 0) continue;
    index_.emplace(mat_hash(m), mats_.size());
    mats_.push_back(m);
  }
  elements_.assign(mats_.size(), std::nullopt);
  const auto id = index_of(Mat4::Identity());
  if (id < 0) throw StructuralError("matrix set does not contain the identity");
  identity_ = static_cast<std::size_t>(id);
  if (check_closure && !is_closed()) throw StructuralError("matrix set is not closed under multiplication");
}

std::ptrdiff_t FiniteGroup4::index_of(const Mat4& m) const {
  auto [b, e] = index_.equal_range(mat_hash(m));
  for (auto it = b; it != e; ++it)
    if (mat_equal(mats_[it->second], m)) return static_cast<std::ptrdiff_t>(it->second);
  return -1;
}

std::size_t FiniteGroup4::inverse_index(std::size_t i) const {
  const auto k = index_of(mats_[i].transpose());
  if (k < 0) throw StructuralError("inverse missing from group");
  return static_cast<std::size_t>(k);
}

std::size_t FiniteGroup4::product_index(std::size_t i, std::size_t j) const {
  const auto k = index_of(mats_[i] * mats_[j]);
  if (k < 0) throw StructuralError("product missing from group");
  return static_cast<std::size_t>(k);
}

bool FiniteGroup4::is_closed() const {
  for (const auto& a : mats_)
    for (const auto& b : mats_)
      if (index_of(a * b) < 0) return false;
  return true;
}

bool FiniteGroup4::is_rotation_group() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Mat4& m) { return m.determinant() > 0; });
}

std::vector<std::size_t> FiniteGroup4::rotation_subgroup() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mats_.size(); ++i)
    if (mats_[i].determinant() > 0) out.push_back(i);
  return out;
}

namespace {

struct CosetData {
  std::vector<std::size_t> coset_of;              // element index -> coset id
  std::vector<std::size_t> representative;        // coset id -> element index
};

void require_normal_subgroup(const QuatGroup& big, const QuatGroup& small, const std::string& what) {
  if (!big.contains_all(small))
    throw InputError(what + ": " + small.label().str() + " is not a subgroup of " + big.label().str());
  for (const auto& g : big.elements())
    for (const auto& k : small.elements())
      if (!small.contains(g * k * qconj(g)))
        throw InputError(what + ": " + small.label().str() + " is not normal in " + big.label().str());
}

CosetData cosets(const QuatGroup& big, const QuatGroup& kernel) {
  CosetData d;
  d.coset_of.assign(big.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (d.coset_of[i] != static_cast<std::size_t>(-1)) continue;
    const std::size_t id = d.representative.size();
    d.representative.push_back(i);
    for (const auto& k : kernel.elements()) {
      const auto j = big.index_of(big.elements()[i] * k);
      d.coset_of[static_cast<std::size_t>(j)] = id;
    }
  }
  return d;
}

std::size_t coset_of(const QuatGroup& g, const CosetData& d, const Quaternion& q, const char* side) {
  const auto i = g.index_of(q);
  if (i < 0)
    throw InputError(std::string("s-table: ") + side + " entry " + q.str() + " is not in " + g.label().str());
  return d.coset_of[static_cast<std::size_t>(i)];
}

}  // namespace

FiniteGroup4 build_group(const Presentation& p) {
  const QuatGroup L = finite_subgroup(p.L), LK = finite_subgroup(p.LK);
  const QuatGroup R = finite_subgroup(p.R), RK = finite_subgroup(p.RK);
  require_normal_subgroup(L, LK, "left");
  require_normal_subgroup(R, RK, "right");
  const CosetData cl = cosets(L, LK), cr = cosets(R, RK);
  const std::size_t nq = cl.representative.size();
  if (nq != cr.representative.size()) {
    std::ostringstream os;
    os << "quotients differ: |" << p.L.str() << "/" << p.LK.str() << "| = " << nq << " but |" << p.R.str() << "/"
       << p.RK.str() << "| = " << cr.representative.size();
    throw InputError(os.str());
  }
  if (L.size() * RK.size() / 2 > kMaxGroupOrder) throw InputError("group order exceeds " + std::to_string(kMaxGroupOrder));

  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> phi(nq, none);
  switch (p.s.mode) {
    case CosetPairing::Mode::Automatic: {
      if (nq > 2)
        throw InputError("quotient of order " + std::to_string(nq) + " needs an explicit s-table (or \"identity\")");
      for (std::size_t c = 0; c < nq; ++c) phi[c] = c;  // coset 0 holds the identity on both sides
      break;
    }
    case CosetPairing::Mode::Identity: {
      if (!(p.L == p.R) || !(p.LK == p.RK)) throw InputError("s = identity requires L = R and LK = RK");
      for (std::size_t c = 0; c < nq; ++c) phi[c] = c;
      break;
    }
    case CosetPairing::Mode::Table: {
      for (const auto& [lq, rq] : p.s.table) {
        const auto a = coset_of(L, cl, lq, "left");
        const auto b = coset_of(R, cr, rq, "right");
        if (phi[a] != none && phi[a] != b)
          throw InputError("s-table maps the coset of " + lq.str() + " to two different cosets");
        phi[a] = b;
      }
      for (std::size_t c = 0; c < nq; ++c)
        if (phi[c] == none)
          throw InputError("s-table does not cover the coset of " + L.elements()[cl.representative[c]].str());
      break;
    }
  }
  std::vector<std::size_t> sorted = phi;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("s-table is not a bijection");
  for (std::size_t a = 0; a < nq; ++a)
    for (std::size_t b = 0; b < nq; ++b) {
      const auto ab = coset_of(L, cl, L.elements()[cl.representative[a]] * L.elements()[cl.representative[b]], "left");
      const auto rab = coset_of(
          R, cr, R.elements()[cr.representative[phi[a]]] * R.elements()[cr.representative[phi[b]]], "right");
      if (phi[ab] != rab) throw InputError("s-table is not a homomorphism of the quotients");
    }

  std::vector<Mat4> mats;
  std::vector<GroupElement4> els;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const std::size_t target = phi[cl.coset_of[i]];
    for (std::size_t j = 0; j < R.size(); ++j) {
      if (cr.coset_of[j] != target) continue;
      els.push_back(GroupElement4::rotation(L.elements()[i], R.elements()[j]));
      mats.push_back(els.back().matrix);
    }
  }
  FiniteGroup4 g(mats);
  for (const auto& e : els) {
    const auto k = static_cast<std::size_t>(g.index_of(e.matrix));
    if (!g.element(k)) g.set_element(k, e);
  }
  Presentation meta = p;
  meta.sigma.reset();
  g.set_presentation(meta);
  if (p.sigma) return extend_with_reflection(g, *p.sigma);
  return g;
}

FiniteGroup4 build_group(const QuatGroupLabel& L, const QuatGroupLabel& LK, const QuatGroupLabel& R,
                         const QuatGroupLabel& RK, const CosetPairing& s) {
  Presentation p;
  p.L = L;
  p.LK = LK;
  p.R = R;
  p.RK = RK;
  p.s = s;
  return build_group(p);
}

FiniteGroup4 extend_with_reflection(const FiniteGroup4& gamma, const GroupElement4& sigma) {
  const Mat4& s = sigma.matrix;
  if ((s * s.transpose() - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-12 || s.determinant() > 0)
    throw InputError("sigma " + sigma.str() + " is not a reflection");
  for (const auto& m : gamma.matrices())
    if (!gamma.contains(s * m * s.transpose()))
      throw InputError("sigma " + sigma.str() + " does not normalize the group");
  if (!gamma.contains(s * s)) throw InputError("sigma^2 is not in the group");
  std::vector<Mat4> mats = gamma.matrices();
  for (const auto& m : gamma.matrices()) mats.push_back(s * m);
  FiniteGroup4 out(mats);
  if (out.size() != 2 * gamma.size()) throw InputError("sigma Gamma overlaps Gamma");
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const auto k = static_cast<std::size_t>(out.index_of(gamma[i]));
    if (gamma.element(i)) out.set_element(k, *gamma.element(i));
    if (gamma.element(i) && gamma.element(i)->kind == ElementKind::Rotation) {
      // sigma (l;r): q -> a conj(l q r^-1) b = (a r) conj(q) (conj(l) b)
      const auto& e = *gamma.element(i);
      const auto refl = GroupElement4::reflection(sigma.a * e.b, qconj(e.a) * sigma.b);
      const auto j = out.index_of(refl.matrix);
      if (j >= 0) out.set_element(static_cast<std::size_t>(j), refl);
    }
  }
  if (gamma.presentation()) {
    Presentation p = *gamma.presentation();
    p.sigma = sigma;
    out.set_presentation(p);
  }
  return out;
}

std::vector<Vec4> orbit(const FiniteGroup4& g, const Vec4& v) {
  VectorSet set;
  std::vector<Vec4> out;
  for (const auto& m : g.matrices()) {
    bool inserted = false;
    const Vec4 w = m * v;
    set.insert(w, &inserted);
    if (inserted) out.push_back(w);
  }
  return out;
}

std::vector<Subspace> orbit(const FiniteGroup4& g, const Subspace& s) {
  SubspaceSet set;
  for (const auto& m : g.matrices()) set.insert(s.transformed(m));
  return set.items();
}

bool is_subgroup(const FiniteGroup4& g, const Subgroup& h) {
  if (h.empty()) return false;
  std::vector<char> in(g.size(), 0);
  for (auto i : h) {
    if (i >= g.size()) return false;
    in[i] = 1;
  }
  if (!in[g.identity_index()]) return false;
  for (auto a : h)
    for (auto b : h)
      if (!in[g.product_index(a, b)]) return false;
  return true;
}

Subgroup normalizer(const FiniteGroup4& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw InputError("normalizer: argument is not a subgroup");
  std::vector<char> in(g.size(), 0);
  for (auto i : h) in[i] = 1;
  Subgroup out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    bool ok = true;
    for (auto i : h) {
      const auto c = g.index_of(g[k] * g[i] * g[k].transpose());
      if (c < 0 || !in[static_cast<std::size_t>(c)]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(k);
  }
  return out;
}

Subgroup setwise_stabilizer(const FiniteGroup4& g, const Subspace& s) {
  Subgroup out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (s.transformed(g[k]).same_as(s)) out.push_back(k);
  return out;
}

Subgroup pointwise_stabilizer(const FiniteGroup4& g, const Subspace& s) {
  Subgroup out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if ((g[k] * s.basis - s.basis).cwiseAbs().maxCoeff() < tol::kElementEq) out.push_back(k);
  return out;
}

FiniteGroup4 materialize(const FiniteGroup4& g, const Subgroup& h) {
  std::vector<Mat4> mats;
  for (auto i : h) mats.push_back(g[i]);
  return FiniteGroup4(mats);
}

}  // namespace hetnet
