#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hetnet {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

namespace tol {
inline constexpr double kElementEq = 1e-9;     // quaternion / matrix equality
inline constexpr double kHashGrid = 1e-7;      // rounding grid for hash keys
inline constexpr double kSubspace = 1e-9;      // projector distance for subspace equality
inline constexpr double kRank = 1e-9;          // rank-revealing threshold
}  // namespace tol

/// Hash of a sequence of doubles rounded to tol::kHashGrid.
std::size_t rounded_hash(const double* data, std::size_t n);

/// Orthonormal basis of a subspace of R^4 together with its projector.
struct Subspace {
  Eigen::Matrix<double, 4, Eigen::Dynamic> basis;
  Mat4 projector = Mat4::Zero();

  int dim() const { return static_cast<int>(basis.cols()); }
  bool contains(const Vec4& v, double eps = tol::kSubspace) const;
  bool same_as(const Subspace& other, double eps = tol::kSubspace) const;

  static Subspace from_projector(const Mat4& p);
  static Subspace span(const std::vector<Vec4>& vectors);
  /// Common null space of the given symmetric positive semidefinite sum.
  static Subspace null_space_of_psd(const Mat4& m, double eps = tol::kRank);
  /// {x : M x = x}.
  static Subspace fixed_space(const Mat4& m);
  static Subspace intersect(const Subspace& a, const Subspace& b);
  Subspace transformed(const Mat4& g) const;
  /// Orthogonal complement of this subspace inside `outer`.
  Subspace complement_in(const Subspace& outer) const;
};

/// Subspaces keyed by their rounded projector, with exact-tolerance fallback.
class SubspaceSet {
 public:
  /// Returns the index of an equal subspace, inserting if absent.
  std::size_t insert(const Subspace& s, bool* inserted = nullptr);
  std::ptrdiff_t find(const Subspace& s) const;
  const Subspace& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  const std::vector<Subspace>& items() const { return items_; }

 private:
  std::vector<Subspace> items_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

/// Unit vectors up to tolerance, hashed on rounded components.
class VectorSet {
 public:
  std::size_t insert(const Vec4& v, bool* inserted = nullptr);
  std::ptrdiff_t find(const Vec4& v) const;
  const Vec4& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Vec4> items_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

/// Lexicographic comparison of matrix entries (row-major) with tolerance.
bool lex_less(const Mat4& a, const Mat4& b, double eps = tol::kElementEq);

}  // namespace hetnet
