#include "hetnet/errors.hpp"
#include "hetnet/group4.hpp"
#include "hetnet/presets.hpp"

#include <doctest.h>

#include <random>

using namespace hetnet;

namespace {

// Oracle: matrix of q -> l q conj(r), assembled column by column from qmul.
Mat4 rotation_by_qmul(const Quaternion& l, const Quaternion& r) {
  Mat4 m;
  for (int c = 0; c < 4; ++c) {
    Vec4 e = Vec4::Zero();
    e[c] = 1.0;
    m.col(c) = (l * Quaternion::from_vec(e) * qconj(r)).as_vec();
  }
  return m;
}

bool same_set(const std::vector<Mat4>& a, const std::vector<Mat4>& b, double eps) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || (x - y).cwiseAbs().maxCoeff() < eps;
    if (!found) return false;
  }
  return true;
}

bool is_group(const FiniteGroup4& g, double eps = 1e-12) {
  const auto has = [&](const Mat4& m) {
    for (const auto& x : g.matrices())
      if ((x - m).cwiseAbs().maxCoeff() < eps) return true;
    return false;
  };
  if (!has(Mat4::Identity())) return false;
  for (const auto& a : g.matrices()) {
    if (!has(a.transpose())) return false;
    for (const auto& b : g.matrices())
      if (!has(a * b)) return false;
  }
  return true;
}

Quaternion unit(double a, double b, double c, double d) {
  const double n = std::sqrt(a * a + b * b + c * c + d * d);
  return {a / n, b / n, c / n, d / n};
}

// The sixteen elements of (D2|Z4;D2|Z4), with kappa_6 read as ((0,0,1,0);(0,0,1,0)).
std::vector<Mat4> example_listing(const Quaternion& k6r) {
  const Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  const std::vector<std::pair<Quaternion, Quaternion>> pairs = {{one, one}, {one, k}, {k, one}, {k, k},
                                                                {i, i},     {j, k6r}, {i, j}, {j, i}};
  std::vector<Mat4> out;
  for (const auto& [l, r] : pairs) {
    out.push_back(rotation_by_qmul(l, r));
    out.push_back(rotation_by_qmul(-l, r));
  }
  return out;
}

}  // namespace

TEST_CASE("rotation matrices") {
  CHECK(rotation_matrix({1, 0, 0, 0}, {1, 0, 0, 0}).isApprox(Mat4::Identity(), 1e-15));
  CHECK(rotation_matrix({-1, 0, 0, 0}, {-1, 0, 0, 0}).isApprox(Mat4::Identity(), 1e-15));
  CHECK((rotation_matrix({0, 1, 0, 0}, {1, 0, 0, 0}) - rotation_by_qmul({0, 1, 0, 0}, {1, 0, 0, 0})).norm() < 1e-15);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int t = 0; t < 100; ++t) {
    const auto l = unit(n(rng), n(rng), n(rng), n(rng)), r = unit(n(rng), n(rng), n(rng), n(rng));
    const Mat4 m = rotation_matrix(l, r);
    CHECK((m - rotation_by_qmul(l, r)).norm() < 1e-13);
    CHECK((m * m.transpose() - Mat4::Identity()).norm() < 1e-12);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((m - rotation_matrix(-l, -r)).norm() < 1e-15);
  }
  CHECK_THROWS_AS(rotation_matrix({2, 0, 0, 0}, {1, 0, 0, 0}), InputError);
}

TEST_CASE("reflection matrices") {
  Mat4 d = Mat4::Identity();
  d(1, 1) = d(2, 2) = d(3, 3) = -1;
  CHECK((reflection_matrix({1, 0, 0, 0}, {1, 0, 0, 0}) - d).norm() < 1e-15);
  const Mat4 s = reflection_matrix({0, 1, 0, 0}, {0, 1, 0, 0});
  CHECK(s.determinant() == doctest::Approx(-1.0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  for (int t = 0; t < 50; ++t) {
    const auto a = unit(n(rng), n(rng), n(rng), n(rng)), b = unit(n(rng), n(rng), n(rng), n(rng));
    const Mat4 m = reflection_matrix(a, b);
    CHECK(m.determinant() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK((m * m).determinant() == doctest::Approx(1.0).epsilon(1e-12));
    // Direct evaluation of q -> a conj(q) b on a random vector.
    const Vec4 x(n(rng), n(rng), n(rng), n(rng));
    CHECK((m * x - (a * qconj(Quaternion::from_vec(x)) * b).as_vec()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(reflection_matrix({1, 1, 0, 0}, {1, 0, 0, 0}), InputError);
}

TEST_CASE("example group matches the element listing") {
  const auto g = build_group(group_preset("d2z4-d2z4").presentation);
  REQUIRE(g.size() == 16);
  CHECK(same_set(g.matrices(), example_listing({0, 0, 1, 0}), 1e-12));
  CHECK(is_group(g));
}

TEST_CASE("the literal kappa_6 listing does not close") {
  const auto lit = example_listing({0, 0, 0, 1});
  CHECK_THROWS_AS(FiniteGroup4(lit, true), StructuralError);
}

TEST_CASE("build_group orders and closure") {
  CHECK(build_group(QuatGroupLabel::parse("Z1"), QuatGroupLabel::parse("Z1"), QuatGroupLabel::parse("Z1"),
                    QuatGroupLabel::parse("Z1"))
            .size() == 1);
  const auto g = build_group(group_preset("d2d2-d6d6").presentation);
  CHECK(g.size() == 96);
  CHECK(is_group(g, 1e-11));
  for (const char* name : {"d2d2-d4d4", "d2z2-d2z2", "d2d1-d2d1", "d2d2-tt"}) {
    CAPTURE(name);
    const auto h = build_group(group_preset(name).presentation);
    CHECK(h.is_closed());
    CHECK(h.is_rotation_group());
  }
}

TEST_CASE("build_group rejects incompatible quotients") {
  CHECK_THROWS_AS(build_group(QuatGroupLabel::parse("D2"), QuatGroupLabel::parse("Z4"), QuatGroupLabel::parse("D2"),
                              QuatGroupLabel::parse("D2")),
                  InputError);
  CHECK_THROWS_AS(build_group(QuatGroupLabel::parse("D2"), QuatGroupLabel::parse("Z3"), QuatGroupLabel::parse("D2"),
                              QuatGroupLabel::parse("Z4")),
                  InputError);
}

TEST_CASE("reflection extensions double the order") {
  for (const char* name : {"d2z2-d2z2-refl", "d2z1-d2z1-refl"}) {
    CAPTURE(name);
    auto p = group_preset(name).presentation;
    const auto ext = build_group(p);
    p.sigma.reset();
    const auto base = build_group(p);
    CHECK(ext.size() == 2 * base.size());
    CHECK(is_group(ext));
    CHECK(ext.rotation_subgroup().size() == base.size());
  }
}

TEST_CASE("a reflection that does not normalize is rejected") {
  const auto g = build_group(group_preset("d2z4-d2z4").presentation);
  const auto sigma = GroupElement4::reflection(unit(std::cos(0.3), std::sin(0.3), 0, 0), {1, 0, 0, 0});
  CHECK_THROWS_AS(extend_with_reflection(g, sigma), InputError);
  CHECK_THROWS_AS(extend_with_reflection(g, GroupElement4::rotation({1, 0, 0, 0}, {1, 0, 0, 0})), InputError);
}

TEST_CASE("orbits and stabilizers") {
  const auto g = build_group(group_preset("d2z4-d2z4").presentation);
  const Subspace p1 = Subspace::span({Vec4(1, 0, 0, 0), Vec4(0, 0, 0, 1)});
  CHECK(orbit(g, p1).size() == 1);
  CHECK(orbit(FiniteGroup4(), p1).size() == 1);

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::vector<Subspace> tests = {p1, Subspace::span({Vec4(1, 1, 0, 0)}), Subspace::span({Vec4(1, 0, 0, 1)})};
  for (int t = 0; t < 5; ++t) tests.push_back(Subspace::span({Vec4(n(rng), n(rng), n(rng), n(rng))}));
  for (const auto& s : tests) {
    const auto o = orbit(g, s);
    CHECK(g.size() % o.size() == 0);
    CHECK(o.size() * setwise_stabilizer(g, s).size() == g.size());
  }
}

TEST_CASE("normalizers") {
  const auto g = build_group(group_preset("d2z4-d2z4").presentation);
  Subgroup all(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) all[k] = k;
  CHECK(normalizer(g, all).size() == g.size());
  CHECK(normalizer(g, {g.identity_index()}).size() == g.size());
  const Subspace p1 = Subspace::span({Vec4(1, 0, 0, 0), Vec4(0, 0, 0, 1)});
  const auto sigma = pointwise_stabilizer(g, p1);
  CHECK(normalizer(g, sigma).size() == 8 * sigma.size());
  CHECK_THROWS_AS(normalizer(g, {0, 1, 2}), InputError);
}

TEST_CASE("group invariants on every rotation preset") {
  for (const auto& gp : group_presets()) {
    CAPTURE(gp.name);
    const auto g = build_group(gp.presentation);
    CHECK(g.size() <= kMaxGroupOrder);
    CHECK(g.contains(Mat4::Identity()));
    const auto rot = g.rotation_subgroup().size();
    CHECK((rot == g.size() || 2 * rot == g.size()));
    for (std::size_t a = 0; a < g.size(); a += 7) {
      CHECK(g.contains(g[a].transpose()));
      for (std::size_t b = 0; b < g.size(); b += 5) CHECK(g.contains(g[a] * g[b]));
    }
  }
}
