#include "hetnet/errors.hpp"
#include "hetnet/quat.hpp"

#include <doctest.h>

#include <random>

using namespace hetnet;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double eps = 1e-12) {
  for (int i = 0; i < 4; ++i)
    if (std::abs(a[i] - b[i]) > eps) return false;
  return true;
}

Quaternion random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng), n(rng)};
}

}  // namespace

TEST_CASE("qmul basic products") {
  const Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  const Quaternion q{0.3, -1.2, 2.5, 0.7};
  CHECK(near(one * q, q));
  CHECK(near(q * one, q));
  CHECK(near(i * i, {-1, 0, 0, 0}));
  CHECK(near(i * j, k));
  CHECK(near(j * k, i));
  CHECK(near(k * i, j));
  CHECK(near(j * i, -k));
}

TEST_CASE("qmul is multiplicative in norm and associative") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const auto a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
    CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-13));
    CHECK(near((a * b) * c, a * (b * c), 1e-12 * (1 + a.norm() * b.norm() * c.norm())));
  }
}

TEST_CASE("qconj") {
  CHECK(near(qconj({1, 0, 0, 0}), {1, 0, 0, 0}));
  CHECK(near(qconj({0, 1, 0, 0}), {0, -1, 0, 0}));
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    auto q = random_quat(rng);
    const double s = 1.0 / q.norm();
    q = Quaternion{q[0] * s, q[1] * s, q[2] * s, q[3] * s};
    CHECK(near(q * qconj(q), {1, 0, 0, 0}));
  }
}

TEST_CASE("finite subgroup orders") {
  CHECK(finite_subgroup(QuatFamily::Z, 4).size() == 4);
  CHECK(finite_subgroup(QuatFamily::V).size() == 8);
  CHECK(finite_subgroup(QuatFamily::T).size() == 24);
  CHECK(finite_subgroup(QuatFamily::O).size() == 48);
  CHECK(finite_subgroup(QuatFamily::I).size() == 120);
  for (int n = 1; n <= 7; ++n) {
    CHECK(finite_subgroup(QuatFamily::Z, n).size() == static_cast<std::size_t>(n));
    CHECK(finite_subgroup(QuatFamily::D, n).size() == static_cast<std::size_t>(4 * n));
  }
  CHECK_THROWS_AS(finite_subgroup(QuatFamily::Z, 0), InputError);
  CHECK_THROWS_AS(finite_subgroup(QuatFamily::D, -2), InputError);
}

TEST_CASE("Z4 elements are (cos 2r pi/4, 0, 0, sin 2r pi/4)") {
  const auto g = finite_subgroup(QuatFamily::Z, 4);
  for (int r = 0; r < 4; ++r) {
    const double a = 2.0 * r * 3.14159265358979323846 / 4.0;
    CHECK(g.contains({std::cos(a), 0, 0, std::sin(a)}));
  }
}

TEST_CASE("V is the eight unit quaternions +-1, +-i, +-j, +-k") {
  const auto g = finite_subgroup(QuatFamily::V);
  for (int p = 0; p < 4; ++p)
    for (double s : {-1.0, 1.0}) {
      std::array<double, 4> c{0, 0, 0, 0};
      c[static_cast<std::size_t>(p)] = s;
      CHECK(g.contains({c[0], c[1], c[2], c[3]}));
    }
}

TEST_CASE("generated groups are closed, contain 1 and inverses") {
  for (const char* l : {"Z1", "Z2", "Z6", "D1", "D2", "D3", "D4", "V", "T", "O", "I"}) {
    const auto g = finite_subgroup(QuatGroupLabel::parse(l));
    CAPTURE(l);
    CHECK(g.is_closed());
    CHECK(g.contains({1, 0, 0, 0}));
    for (const auto& q : g.elements()) {
      CHECK(q.is_unit());
      CHECK(g.contains(qconj(q)));
    }
  }
}

TEST_CASE("label parsing") {
  CHECK(QuatGroupLabel::parse("Z4") == QuatGroupLabel{QuatFamily::Z, 4});
  CHECK(QuatGroupLabel::parse("Z(4)") == QuatGroupLabel{QuatFamily::Z, 4});
  CHECK(QuatGroupLabel::parse("D6").n == 6);
  CHECK(QuatGroupLabel::parse("T").family == QuatFamily::T);
  CHECK_THROWS_AS(QuatGroupLabel::parse("X3"), InputError);
  CHECK_THROWS_AS(QuatGroupLabel::parse("D"), InputError);
}

TEST_CASE("canonical sign is display-only") {
  const Quaternion q{-0.5, 0.5, -0.5, 0.5};
  const auto c = q.canonical_sign();
  CHECK(c[0] > 0);
  CHECK(near(c, -q));
}
