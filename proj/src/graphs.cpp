#include "hetnet/graphs.hpp"

#include "hetnet/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace hetnet {

std::string to_string(GraphType t) {
  switch (t) {
    case GraphType::I: return "I";
    case GraphType::II: return "II";
    case GraphType::III: return "III";
    case GraphType::IV: return "IV";
    case GraphType::V: return "V";
    case GraphType::VI: return "VI";
    case GraphType::NonSimple: return "non-simple";
    case GraphType::Empty: return "empty";
    case GraphType::Unrecognized: return "unrecognized";
  }
  return "unrecognized";
}

int GroupGraph::multiplicity(int u, int v) const {
  int m = 0;
  for (const auto& e : edges)
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) ++m;
  return m;
}

int GroupGraph::degree(int u) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.u == u) ++d;
    if (e.v == u) ++d;
  }
  return d;
}

GroupGraph build_graph(const FiniteGroup4& g, const IsotropyData& iso) {
  GroupGraph out;
  out.num_vertices = static_cast<int>(iso.semiaxis_orbits.size());
  out.rotation_group = g.is_rotation_group();
  out.simple = std::all_of(iso.semiaxis_orbits.begin(), iso.semiaxis_orbits.end(),
                           [](const SemiaxisOrbit& o) { return o.simple; });
  for (std::size_t k = 0; k < iso.plane_orbits.size(); ++k) {
    const auto verts = iso.semiaxis_orbits_in_plane(iso.plane_orbits[k].rep());
    const int id = static_cast<int>(k);
    if (verts.empty())
      out.non_intersecting_planes.push_back(id);
    else if (verts.size() == 1)
      out.edges.push_back({id, verts[0], verts[0]});
    else if (verts.size() == 2)
      out.edges.push_back({id, verts[0], verts[1]});
    else
      out.hyperedge_planes.push_back(id);
  }
  out.type = classify_graph(out);
  return out;
}

GroupGraph build_graph(const FiniteGroup4& g) { return build_graph(g, analyze_isotropy(g)); }

namespace {

bool connected(int n, const std::vector<GraphEdge>& edges) {
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  for (int i = 1; i < n; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

bool bipartite(int n, const GroupGraph& g) {
  std::vector<int> colour(n, -1);
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int y = -1;
        if (e.u == x) y = e.v;
        else if (e.v == x) y = e.u;
        if (y < 0) continue;
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Two vertex-disjoint triangles plus a perfect matching between them.
bool is_prism(int n, const GroupGraph& g) {
  if (n != 6) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (g.multiplicity(a, b) != 1 || g.multiplicity(b, c) != 1 || g.multiplicity(a, c) != 1) continue;
        std::vector<int> rest;
        for (int x = 0; x < n; ++x)
          if (x != a && x != b && x != c) rest.push_back(x);
        if (g.multiplicity(rest[0], rest[1]) == 1 && g.multiplicity(rest[1], rest[2]) == 1 &&
            g.multiplicity(rest[0], rest[2]) == 1)
          return true;  // degree 3 everywhere forces the remaining three edges to be a matching
      }
  return false;
}

}  // namespace

GraphType classify_graph(const GroupGraph& g) {
  const int n = g.num_vertices;
  if (n == 0) return GraphType::Empty;
  if (!g.simple || !g.hyperedge_planes.empty()) return GraphType::NonSimple;
  if (!connected(n, g.edges)) return GraphType::Unrecognized;
  const auto loops = std::count_if(g.edges.begin(), g.edges.end(), [](const GraphEdge& e) { return e.loop(); });
  const auto m = g.edges.size();

  if (n == 2 && m == 3) {
    if (loops == 2 && g.multiplicity(0, 0) == 1 && g.multiplicity(1, 1) == 1) return GraphType::I;
    if (loops == 0) return GraphType::II;
    return GraphType::Unrecognized;
  }
  if (loops != 0) return GraphType::Unrecognized;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != 3) return GraphType::Unrecognized;

  if (n == 4 && m == 6) {
    int doubled = 0, single = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const int k = g.multiplicity(a, b);
        if (k == 2) ++doubled;
        else if (k == 1) ++single;
        else if (k != 0) return GraphType::Unrecognized;
      }
    if (single == 6) return GraphType::III;
    if (doubled == 2 && single == 2) return GraphType::IV;
    return GraphType::Unrecognized;
  }
  if (n == 6 && m == 9) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (g.multiplicity(a, b) > 1) return GraphType::Unrecognized;
    if (bipartite(n, g)) return GraphType::V;
    if (is_prism(n, g)) return GraphType::VI;
  }
  return GraphType::Unrecognized;
}

// ---------------------------------------------------------------------------
// Table lookup

namespace {

bool is(const QuatGroupLabel& l, QuatFamily f) { return l.family == f; }

std::optional<int> divide(int a, int b) {
  if (b <= 0 || a % b != 0) return std::nullopt;
  return a / b;
}

// Integer ratio (k2 +- s k1)/2 as used by condno2: the sign making it integral.
std::optional<int> half_ratio(int k2, int s, int k1) {
  for (int sign : {+1, -1}) {
    const int v = k2 + sign * s * k1;
    if (v % 2 == 0) return v / 2;
  }
  return std::nullopt;
}

struct RowResult {
  bool matched = false;
  ExpectedType value;
};

RowResult listed(GraphType t, std::string row) {
  RowResult r;
  r.matched = true;
  r.value.listed = true;
  r.value.type = t;
  r.value.row = std::move(row);
  return r;
}

RowResult unlisted(std::string row, std::string reason) {
  RowResult r;
  r.matched = true;
  r.value.listed = false;
  r.value.row = std::move(row);
  r.value.reason = std::move(reason);
  return r;
}

// Rows of the rotation-group table, for the given orientation of the presentation.
RowResult lookup_rotation(const QuatGroupLabel& L, const QuatGroupLabel& LK, const QuatGroupLabel& R,
                          const QuatGroupLabel& RK, std::optional<int> s) {
  using F = QuatFamily;
  const bool left_d = is(L, F::D);
  if (!left_d) return {};

  // (D2K1|D2K1;D2K2|D2K2)
  if (is(LK, F::D) && LK.n == L.n && is(R, F::D) && is(RK, F::D) && RK.n == R.n && L.n % 2 == 0 && R.n % 2 == 0) {
    const int k1 = L.n / 2, k2 = R.n / 2;
    if (std::gcd(k1, k2) != 1) return unlisted("(D2K1|D2K1;D2K2|D2K2)", "K1 and K2 are not coprime");
    return listed((k1 + k2) % 2 == 0 ? GraphType::V : GraphType::VI, "(D2K1|D2K1;D2K2|D2K2)");
  }

  // (D2K1r|Z4K1;D2K2r|Z4K2)_s
  if (is(LK, F::Z) && is(R, F::D) && is(RK, F::Z) && LK.n % 4 == 0 && RK.n % 4 == 0) {
    const int k1 = LK.n / 4, k2 = RK.n / 4;
    const auto r1 = divide(L.n, 2 * k1), r2 = divide(R.n, 2 * k2);
    if (r1 && r2 && *r1 == *r2) {
      const int r = *r1;
      const std::string row = "(D2K1r|Z4K1;D2K2r|Z4K2)_s";
      if (std::gcd(k1, k2) != 1) return unlisted(row, "K1 and K2 are not coprime");
      if (r > 1) {
        if (!s) return unlisted(row, "s_index is required when r > 1");
        if (std::gcd(r, std::abs(k2 - *s * k1)) != 1) return unlisted(row, "condition on r and K2 - sK1 fails");
      }
      return listed(GraphType::IV, row);
    }
  }

  // (D2K1r|Z2K1;D2K2r|Z2K2)_s, K1, K2 odd
  if (is(LK, F::Z) && is(R, F::D) && is(RK, F::Z) && LK.n % 2 == 0 && RK.n % 2 == 0 && (LK.n / 2) % 2 == 1 &&
      (RK.n / 2) % 2 == 1) {
    const int k1 = LK.n / 2, k2 = RK.n / 2;
    const auto r1 = divide(L.n, 2 * k1), r2 = divide(R.n, 2 * k2);
    if (r1 && r2 && *r1 == *r2) {
      const int r = *r1;
      const std::string row = "(D2K1r|Z2K1;D2K2r|Z2K2)_s";
      if (std::gcd(k1, k2) != 1) return unlisted(row, "K1 and K2 are not coprime");
      if (r > 1) {
        if (!s) return unlisted(row, "s_index is required when r > 1");
        const auto h = half_ratio(k2, *s, k1);
        if (!h || std::gcd(r, std::abs(*h)) != 1) return unlisted(row, "condition on r and (K2 +- sK1)/2 fails");
      }
      return listed(GraphType::III, row);
    }
  }

  // (D2K1r|ZK1;D2K2r|ZK2)_s, K1, K2 odd
  if (is(LK, F::Z) && is(R, F::D) && is(RK, F::Z) && LK.n % 2 == 1 && RK.n % 2 == 1) {
    const int k1 = LK.n, k2 = RK.n;
    const auto r1 = divide(L.n, 2 * k1), r2 = divide(R.n, 2 * k2);
    if (r1 && r2 && *r1 == *r2) {
      const int r = *r1;
      const std::string row = "(D2K1r|ZK1;D2K2r|ZK2)_s";
      if (std::gcd(k1, k2) != 1) return unlisted(row, "K1 and K2 are not coprime");
      if (r > 1) {
        if (!s) return unlisted(row, "s_index is required when r > 1");
        const auto h = half_ratio(k2, *s, k1);
        if (!h || std::gcd(r, std::abs(*h)) != 1) return unlisted(row, "condition on r and (K2 +- sK1)/2 fails");
      }
      return listed(GraphType::II, row);
    }
  }

  // (D2K1|DK1;D2K2|DK2)
  if (is(LK, F::D) && 2 * LK.n == L.n && is(R, F::D) && is(RK, F::D) && 2 * RK.n == R.n) {
    if (std::gcd(LK.n, RK.n) != 1) return unlisted("(D2K1|DK1;D2K2|DK2)", "K1 and K2 are not coprime");
    return listed(GraphType::IV, "(D2K1|DK1;D2K2|DK2)");
  }

  // (D2K1|DK1;D2K2|Z4K2)
  if (is(LK, F::D) && 2 * LK.n == L.n && is(R, F::D) && is(RK, F::Z) && RK.n % 4 == 0 && 2 * (RK.n / 4) == R.n) {
    const int k1 = LK.n, k2 = RK.n / 4;
    const std::string row = "(D2K1|DK1;D2K2|Z4K2)";
    if (k1 % 2 == 0) {
      if (std::gcd(k1 / 2, k2) != 1) return unlisted(row, "K1/2 and K2 are not coprime");
      return listed(GraphType::II, row + ", K1 even");
    }
    if (std::gcd(k1, k2) != 1) return unlisted(row, "K1 and K2 are not coprime");
    return listed(GraphType::III, row + ", K1 odd");
  }

  // Rows with a polyhedral right-hand side.
  if (L.n % 2 != 0) return {};
  const int k = L.n / 2;
  if (is(LK, F::D) && LK.n == L.n && is(R, F::T) && is(RK, F::T))
    return listed(k % 2 == 0 ? GraphType::I : GraphType::II, "(D2K|D2K;T|T)");
  if (is(LK, F::D) && LK.n == L.n && is(R, F::O) && is(RK, F::O)) {
    if (k % 2 == 0 || k % 3 == 0) return unlisted("(D2K|D2K;O|O)", "requires K odd and not a multiple of 3");
    return listed(GraphType::III, "(D2K|D2K;O|O)");
  }
  if (is(LK, F::Z) && LK.n == 4 * k && is(R, F::O) && is(RK, F::T)) {
    if (k % 3 == 0) return unlisted("(D2K|Z4K;O|T)", "K is a multiple of 3");
    return listed(k % 2 == 0 ? GraphType::I : GraphType::II, "(D2K|Z4K;O|T)");
  }
  if (is(LK, F::D) && LK.n == k && is(R, F::O) && is(RK, F::T)) {
    if (k % 3 == 0 || (k % 2 == 0 && (k / 2) % 2 == 1))
      return unlisted("(D2K|DK;O|T)", "K is a multiple of 3 or twice an odd number");
    return listed(k % 2 == 0 ? GraphType::I : GraphType::II, "(D2K|DK;O|T)");
  }
  if (is(LK, F::D) && LK.n == L.n && is(R, F::I) && is(RK, F::I)) {
    if (k % 5 == 0) return unlisted("(D2K|D2K;I|I)", "K is a multiple of 5");
    return listed(k % 2 == 0 ? GraphType::I : GraphType::II, "(D2K|D2K;I|I)");
  }
  return {};
}

bool same_matrix(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff() < 1e-9; }

}  // namespace

ExpectedType expected_type(const Presentation& p) {
  using F = QuatFamily;
  if (p.sigma) {
    const auto same = [](const QuatGroupLabel& a, F f, int n) { return a.family == f && a.n == n; };
    const Mat4& m = p.sigma->matrix;
    if (same(p.L, F::D, 2) && same(p.LK, F::Z, 2) && same(p.R, F::D, 2) && same(p.RK, F::Z, 2) &&
        p.s.mode == CosetPairing::Mode::Identity &&
        same_matrix(m, reflection_matrix(Quaternion{0, 1, 0, 0}, Quaternion{0, 1, 0, 0}))) {
      ExpectedType e;
      e.listed = true;
      e.type = GraphType::III;
      e.row = "(D2|Z2;D2|Z2)* with sigma = (i;i)*";
      return e;
    }
    if (same(p.L, F::D, 2) && same(p.LK, F::Z, 1) && same(p.R, F::D, 2) && same(p.RK, F::Z, 1) &&
        p.s.mode == CosetPairing::Mode::Identity &&
        same_matrix(m, reflection_matrix(Quaternion{1, 0, 0, 0}, Quaternion{1, 0, 0, 0}))) {
      ExpectedType e;
      e.listed = true;
      e.type = GraphType::II;
      e.row = "(D2|Z1;D2|Z1)* with sigma = (1;1)*";
      return e;
    }
    ExpectedType e;
    e.reason = "reflection extension not in the table";
    return e;
  }
  // Exchanging the two factors is conjugation by q -> conj(q), which preserves the graph.
  for (const auto& r : {lookup_rotation(p.L, p.LK, p.R, p.RK, p.s_index),
                        lookup_rotation(p.R, p.RK, p.L, p.LK, p.s_index)})
    if (r.matched) return r.value;
  ExpectedType e;
  e.reason = "presentation matches no table row";
  return e;
}

// ---------------------------------------------------------------------------
// Networks

int NetworkDiagram::count(int from, int to) const {
  int c = 0;
  for (const auto& e : edges)
    if (e.from == from && e.to == to) ++c;
  return c;
}

namespace {

std::vector<std::vector<int>> reach(const NetworkDiagram& n) {
  const int v = n.num_vertices;
  std::vector<std::vector<int>> r(v, std::vector<int>(v, 0));
  for (int i = 0; i < v; ++i) r[i][i] = 1;
  for (const auto& e : n.edges) r[e.from][e.to] = 1;
  for (int k = 0; k < v; ++k)
    for (int i = 0; i < v; ++i)
      if (r[i][k])
        for (int j = 0; j < v; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

std::vector<int> count_matrix(const NetworkDiagram& n, const std::vector<int>& perm) {
  const int v = n.num_vertices;
  std::vector<int> m(static_cast<std::size_t>(v * v), 0);
  for (const auto& e : n.edges) ++m[static_cast<std::size_t>(perm[e.from] * v + perm[e.to])];
  return m;
}

std::vector<std::vector<int>> undirected_automorphisms(const NetworkDiagram& n) {
  const int v = n.num_vertices;
  std::vector<int> und(static_cast<std::size_t>(v * v), 0);
  for (const auto& e : n.edges) {
    ++und[static_cast<std::size_t>(e.from * v + e.to)];
    if (e.from != e.to) ++und[static_cast<std::size_t>(e.to * v + e.from)];
  }
  std::vector<int> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < v && ok; ++i)
      for (int j = 0; j < v && ok; ++j)
        ok = und[static_cast<std::size_t>(i * v + j)] == und[static_cast<std::size_t>(perm[i] * v + perm[j])];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<int> canonical_with(const NetworkDiagram& n, const std::vector<std::vector<int>>& autos) {
  std::vector<int> best;
  for (const auto& p : autos) {
    auto m = count_matrix(n, p);
    if (best.empty() || m < best) best = std::move(m);
  }
  return best;
}

int two_cycles(const NetworkDiagram& n) {
  int c = 0;
  for (int a = 0; a < n.num_vertices; ++a)
    for (int b = a + 1; b < n.num_vertices; ++b)
      if (n.count(a, b) > 0 && n.count(b, a) > 0) ++c;
  return c;
}

// Va / Vb / Vc from the position of the vertices whose transverse (non-cycle) edge points out.
std::string label_v(const NetworkDiagram& n) {
  for (const auto& cyc : subcycles(n)) {
    if (cyc.vertices.size() != 6) continue;
    std::vector<int> pos(n.num_vertices, -1);
    for (int k = 0; k < 6; ++k) pos[cyc.vertices[k]] = k;
    std::set<int> on_cycle(cyc.edges.begin(), cyc.edges.end());
    std::vector<int> sources;
    for (int e = 0; e < static_cast<int>(n.edges.size()); ++e)
      if (!on_cycle.count(e)) sources.push_back(pos[n.edges[e].from]);
    std::sort(sources.begin(), sources.end());
    const bool alternating = (sources == std::vector<int>{0, 2, 4}) || (sources == std::vector<int>{1, 3, 5});
    return alternating ? "Vb" : "Va";
  }
  return "Vc";
}

}  // namespace

std::vector<int> canonical_signature(const NetworkDiagram& n) {
  return canonical_with(n, undirected_automorphisms(n));
}

bool is_network(const NetworkDiagram& n) {
  const auto r = reach(n);
  for (const auto& e : n.edges)
    if (!r[e.to][e.from]) return false;
  for (int i = 0; i < n.num_vertices; ++i)
    if (!r[0][i]) return false;
  return true;
}

std::vector<DirectedCycle> subcycles(const NetworkDiagram& n) {
  std::vector<DirectedCycle> out;
  const int ne = static_cast<int>(n.edges.size());
  for (int s = 0; s < n.num_vertices; ++s) {
    // Cycles whose smallest vertex is s.
    std::vector<int> path_edges, path_vertices;
    std::vector<char> used(n.num_vertices, 0);
    std::function<void(int)> dfs = [&](int x) {
      for (int e = 0; e < ne; ++e) {
        const auto& de = n.edges[e];
        if (de.from != x || de.to < s) continue;
        if (de.to == s) {
          DirectedCycle c;
          c.edges = path_edges;
          c.edges.push_back(e);
          c.vertices = path_vertices;
          c.vertices.push_back(x);
          out.push_back(std::move(c));
          continue;
        }
        if (used[de.to]) continue;
        used[de.to] = 1;
        path_edges.push_back(e);
        path_vertices.push_back(x);
        dfs(de.to);
        path_edges.pop_back();
        path_vertices.pop_back();
        used[de.to] = 0;
      }
    };
    used[s] = 1;
    dfs(s);
  }
  return out;
}

std::vector<NetworkDiagram> enumerate_maximal_networks(const GroupGraph& g) {
  const GraphType t = classify_graph(g);
  if (t == GraphType::Empty || t == GraphType::NonSimple || t == GraphType::Unrecognized) return {};

  NetworkDiagram base;
  base.num_vertices = g.num_vertices;
  base.base = t;
  std::vector<int> free_edges;
  for (const auto& e : g.edges) {
    if (!e.loop()) free_edges.push_back(static_cast<int>(base.edges.size()));
    base.edges.push_back({e.u, e.v, e.plane_orbit});
  }
  if (free_edges.size() > 20) throw InputError("too many edges to enumerate orientations");
  const auto autos = undirected_automorphisms(base);

  std::map<std::vector<int>, NetworkDiagram> classes;
  const std::size_t total = std::size_t{1} << free_edges.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    NetworkDiagram d = base;
    for (std::size_t k = 0; k < free_edges.size(); ++k)
      if (mask & (std::size_t{1} << k)) std::swap(d.edges[free_edges[k]].from, d.edges[free_edges[k]].to);
    if (!is_network(d)) continue;
    auto sig = canonical_with(d, autos);
    if (!classes.count(sig)) {
      d.signature = sig;
      classes.emplace(std::move(sig), std::move(d));
    }
  }

  std::vector<NetworkDiagram> out;
  for (auto& [sig, d] : classes) out.push_back(std::move(d));
  // Lexicographic order of the canonical signature (std::map order) gives VI-1..VI-8.
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& d = out[k];
    switch (t) {
      case GraphType::IV: d.label = std::string("IV") + static_cast<char>('a' + two_cycles(d)); break;
      case GraphType::V: d.label = label_v(d); break;
      case GraphType::VI: d.label = "VI-" + std::to_string(k + 1); break;
      default: d.label = to_string(t); break;
    }
  }
  if (t != GraphType::VI)
    std::stable_sort(out.begin(), out.end(),
                     [](const NetworkDiagram& a, const NetworkDiagram& b) { return a.label < b.label; });
  return out;
}

}  // namespace hetnet
