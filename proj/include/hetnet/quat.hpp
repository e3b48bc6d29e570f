#pragma once

#include "hetnet/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace hetnet {

/// Real quaternion (q1, q2, q3, q4) with q1 the real part.
struct Quaternion {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  Quaternion() = default;
  Quaternion(double q1, double q2, double q3, double q4) : c{q1, q2, q3, q4} {}

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }
  double norm() const;
  bool is_unit(double eps = 1e-12) const;
  Vec4 as_vec() const { return Vec4(c[0], c[1], c[2], c[3]); }
  static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  Quaternion operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
  bool approx_equal(const Quaternion& o, double eps = tol::kElementEq) const;
  /// Representative of {q, -q} with first nonzero component positive (display only).
  Quaternion canonical_sign() const;
  std::string str() const;
};

Quaternion qmul(const Quaternion& q, const Quaternion& w);
Quaternion qconj(const Quaternion& q);

inline Quaternion operator*(const Quaternion& q, const Quaternion& w) { return qmul(q, w); }

/// The finite subgroups of the unit quaternions, in their standard embeddings.
enum class QuatFamily { Z, D, V, T, O, I };

struct QuatGroupLabel {
  QuatFamily family = QuatFamily::Z;
  int n = 1;  // used by Z(n) and D(n)

  std::string str() const;
  /// Parses "Z4", "D2", "V", "T", "O", "I" (also "Z(4)").
  static QuatGroupLabel parse(const std::string& text);
  friend bool operator==(const QuatGroupLabel&, const QuatGroupLabel&) = default;
};

class QuatGroup {
 public:
  QuatGroup(QuatGroupLabel label, std::vector<Quaternion> elements);

  const QuatGroupLabel& label() const { return label_; }
  const std::vector<Quaternion>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::ptrdiff_t index_of(const Quaternion& q) const;
  bool contains(const Quaternion& q) const { return index_of(q) >= 0; }
  bool is_closed() const;
  /// True when every element of `sub` lies in this group.
  bool contains_all(const QuatGroup& sub) const;

 private:
  QuatGroupLabel label_;
  std::vector<Quaternion> elements_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

/// Elements of Z(n), D(n), V, T, O or I. Throws InputError for n < 1.
QuatGroup finite_subgroup(const QuatGroupLabel& label);
QuatGroup finite_subgroup(QuatFamily family, int n = 1);

}  // namespace hetnet
