#include "hetnet/graphs.hpp"
#include "hetnet/presets.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace hetnet;

namespace {

GroupGraph graph_of(const std::string& preset) { return build_graph(build_group(group_preset(preset).presentation)); }

// Independent count: all orientations of the non-loop edges in which every edge
// lies on a directed cycle, up to vertex permutations preserving the undirected multigraph.
std::size_t brute_force_network_count(const GroupGraph& g) {
  const int n = g.num_vertices;
  std::vector<std::pair<int, int>> free;
  for (const auto& e : g.edges)
    if (!e.loop()) free.emplace_back(e.u, e.v);
  std::vector<int> und(static_cast<std::size_t>(n * n), 0);
  for (auto [u, v] : free) {
    ++und[static_cast<std::size_t>(u * n + v)];
    ++und[static_cast<std::size_t>(v * n + u)];
  }
  std::vector<std::vector<int>> autos;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        ok = und[static_cast<std::size_t>(a * n + b)] ==
             und[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)] * n + perm[static_cast<std::size_t>(b)])];
    if (ok) autos.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::vector<int>> classes;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    std::vector<std::pair<int, int>> dir;
    for (std::size_t k = 0; k < free.size(); ++k)
      dir.push_back(mask >> k & 1 ? std::pair{free[k].second, free[k].first} : free[k]);
    // reach[a][b]: b reachable from a.
    std::vector<char> reach(static_cast<std::size_t>(n * n), 0);
    for (int a = 0; a < n; ++a) reach[static_cast<std::size_t>(a * n + a)] = 1;
    for (auto [u, v] : dir) reach[static_cast<std::size_t>(u * n + v)] = 1;
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (reach[static_cast<std::size_t>(a * n + k)] && reach[static_cast<std::size_t>(k * n + b)])
            reach[static_cast<std::size_t>(a * n + b)] = 1;
    const bool all_on_cycles = std::all_of(dir.begin(), dir.end(), [&](auto e) {
      return reach[static_cast<std::size_t>(e.second * n + e.first)] != 0;
    });
    if (!all_on_cycles) continue;
    std::vector<int> best;
    for (const auto& p : autos) {
      std::vector<int> m(static_cast<std::size_t>(n * n), 0);
      for (auto [u, v] : dir) ++m[static_cast<std::size_t>(p[static_cast<std::size_t>(u)] * n + p[static_cast<std::size_t>(v)])];
      if (best.empty() || m < best) best = m;
    }
    classes.insert(best);
  }
  return classes.size();
}

}  // namespace

TEST_CASE("example group graph") {
  const auto g = graph_of("d2z4-d2z4");
  CHECK(g.num_vertices == 4);
  CHECK(g.edges.size() == 6);
  CHECK(g.simple);
  CHECK(g.type == GraphType::IV);
  for (int v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("trivial group gives the empty graph") {
  const auto g = build_graph(FiniteGroup4());
  CHECK(g.num_vertices == 0);
  CHECK(g.type == GraphType::Empty);
}

TEST_CASE("classification matches the tables") {
  const std::vector<std::pair<const char*, GraphType>> rows = {
      {"d2z4-d2z4", GraphType::IV},      {"d2d2-d6d6", GraphType::V},       {"d2d2-d4d4", GraphType::VI},
      {"d2d2-tt", GraphType::II},        {"d2z2-d2z2-refl", GraphType::III}, {"d2z1-d2z1-refl", GraphType::II},
      {"d2d2-d2d2", GraphType::V},       {"d2d2-oo", GraphType::III},       {"d4d4-tt", GraphType::I}};
  for (const auto& [name, type] : rows) {
    CAPTURE(name);
    const auto& gp = group_preset(name);
    const auto g = build_graph(build_group(gp.presentation));
    CHECK(g.type == type);
    const auto ex = expected_type(gp.presentation);
    CHECK(ex.listed);
    CHECK(ex.type == type);
  }
  const auto v = graph_of("d2d2-d6d6");
  CHECK(v.num_vertices == 6);
  CHECK(v.edges.size() == 9);
}

TEST_CASE("every preset's computed type is recorded") {
  for (const auto& gp : group_presets()) {
    CAPTURE(gp.name);
    CHECK(build_graph(build_group(gp.presentation)).type == gp.computed);
  }
}

TEST_CASE("expected_type parity rules") {
  auto p = group_preset("d2d2-d6d6").presentation;
  CHECK(expected_type(p).type == GraphType::V);
  p = group_preset("d2d2-d4d4").presentation;
  CHECK(expected_type(p).type == GraphType::VI);
  p = group_preset("d2d2-tt").presentation;
  CHECK(expected_type(p).type == GraphType::II);
  Presentation odd;
  odd.L = QuatGroupLabel::parse("Z3");
  odd.LK = QuatGroupLabel::parse("Z3");
  odd.R = QuatGroupLabel::parse("Z5");
  odd.RK = QuatGroupLabel::parse("Z5");
  CHECK_FALSE(expected_type(odd).listed);
}

TEST_CASE("network counts agree with an independent brute force") {
  const std::vector<std::pair<const char*, std::size_t>> rows = {
      {"d2d2-tt", 1}, {"d2d2-oo", 1}, {"d2z4-d2z4", 3}, {"d2d2-d6d6", 3}, {"d2d2-d4d4", 8}};
  for (const auto& [name, count] : rows) {
    CAPTURE(name);
    const auto g = graph_of(name);
    const auto nets = enumerate_maximal_networks(g);
    CHECK(nets.size() == count);
    CHECK(brute_force_network_count(g) == count);
    for (const auto& n : nets) {
      CHECK(is_network(n));
      for (int v = 0; v < n.num_vertices; ++v) {
        int in = 0, out = 0;
        for (const auto& e : n.edges) {
          in += e.to == v;
          out += e.from == v;
        }
        CHECK(in >= 1);
        CHECK(out >= 1);
      }
    }
  }
}

TEST_CASE("type IV labels and the IVc subcycles") {
  const auto nets = enumerate_maximal_networks(graph_of("d2z4-d2z4"));
  std::vector<std::string> labels;
  for (const auto& n : nets) labels.push_back(n.label);
  CHECK(labels == std::vector<std::string>{"IVa", "IVb", "IVc"});
  const auto cycles = subcycles(nets[2]);
  std::multiset<std::size_t> lengths;
  for (const auto& c : cycles) lengths.insert(c.edges.size());
  CHECK(lengths == std::multiset<std::size_t>{2, 2, 4});
}

TEST_CASE("type V and VI labels") {
  std::set<std::string> v;
  for (const auto& n : enumerate_maximal_networks(graph_of("d2d2-d6d6"))) v.insert(n.label);
  CHECK(v == std::set<std::string>{"Va", "Vb", "Vc"});
  const auto vi = enumerate_maximal_networks(graph_of("d2d2-d4d4"));
  for (std::size_t k = 0; k < vi.size(); ++k) CHECK(vi[k].label == "VI-" + std::to_string(k + 1));
}

TEST_CASE("type II network has two 2-cycles") {
  const auto nets = enumerate_maximal_networks(graph_of("d2d2-tt"));
  REQUIRE(nets.size() == 1);
  const auto& n = nets[0];
  int forward = n.count(0, 1), back = n.count(1, 0);
  CHECK(std::min(forward, back) == 1);
  CHECK(std::max(forward, back) == 2);
  CHECK(subcycles(n).size() == 2);
}

TEST_CASE("an acyclic orientation is not a network") {
  NetworkDiagram d;
  d.num_vertices = 3;
  d.edges = {{0, 1, 0}, {1, 2, 1}, {0, 2, 2}};
  CHECK_FALSE(is_network(d));
  CHECK(subcycles(d).empty());
}

TEST_CASE("non-simple graphs are not enumerated") {
  const auto g = build_graph(build_group(QuatGroupLabel::parse("T"), QuatGroupLabel::parse("T"),
                                         QuatGroupLabel::parse("O"), QuatGroupLabel::parse("O")));
  CHECK_FALSE(g.simple);
  CHECK(g.type == GraphType::NonSimple);
  CHECK(enumerate_maximal_networks(g).empty());
}
