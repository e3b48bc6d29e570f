#pragma once

#include "hetnet/linalg.hpp"
#include "hetnet/quat.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hetnet {

enum class ElementKind { Rotation, Reflection };

/// An element of O(4) given as a quaternion pair, with its cached matrix.
/// Rotation (l;r) acts as q -> l q r^-1, reflection (a;b)* as q -> a conj(q) b.
struct GroupElement4 {
  ElementKind kind = ElementKind::Rotation;
  Quaternion a{1, 0, 0, 0};
  Quaternion b{1, 0, 0, 0};
  Mat4 matrix = Mat4::Identity();

  static GroupElement4 rotation(const Quaternion& l, const Quaternion& r);
  static GroupElement4 reflection(const Quaternion& a, const Quaternion& b);
  std::string str() const;
};

Mat4 rotation_matrix(const Quaternion& l, const Quaternion& r);
Mat4 reflection_matrix(const Quaternion& a, const Quaternion& b);

/// How L/LK is matched with R/RK.
struct CosetPairing {
  enum class Mode { Automatic, Identity, Table };
  Mode mode = Mode::Automatic;
  /// Table mode: each entry pairs a representative of an L-coset with one of an R-coset.
  std::vector<std::pair<Quaternion, Quaternion>> table;

  static CosetPairing automatic() { return {}; }
  static CosetPairing identity() { return {Mode::Identity, {}}; }
};

struct Presentation {
  std::string name;
  QuatGroupLabel L, LK, R, RK;
  CosetPairing s;
  /// Index of s used only by the classification table lookup (needed when r > 1).
  std::optional<int> s_index;
  std::optional<GroupElement4> sigma;

  /// "(D2|Z4;D2|Z4)" style string, with "*" appended when sigma is present.
  std::string str() const;
};

/// A finite subgroup of O(4), stored as a list of distinct orthogonal matrices.
class FiniteGroup4 {
 public:
  FiniteGroup4() : FiniteGroup4(std::vector<Mat4>{Mat4::Identity()}) {}
  /// Deduplicates the matrices. Throws StructuralError if the result is not a group.
  explicit FiniteGroup4(const std::vector<Mat4>& matrices, bool check_closure = true);

  std::size_t size() const { return mats_.size(); }
  const Mat4& operator[](std::size_t i) const { return mats_[i]; }
  const std::vector<Mat4>& matrices() const { return mats_; }
  std::ptrdiff_t index_of(const Mat4& m) const;
  bool contains(const Mat4& m) const { return index_of(m) >= 0; }
  std::size_t identity_index() const { return identity_; }
  std::size_t inverse_index(std::size_t i) const;
  std::size_t product_index(std::size_t i, std::size_t j) const;

  bool is_closed() const;
  bool is_rotation_group() const;
  /// Indices of the det = +1 elements.
  std::vector<std::size_t> rotation_subgroup() const;

  const std::optional<Presentation>& presentation() const { return presentation_; }
  void set_presentation(Presentation p) { presentation_ = std::move(p); }
  /// Quaternion pair that produced element i, when known.
  const std::optional<GroupElement4>& element(std::size_t i) const { return elements_[i]; }
  void set_element(std::size_t i, const GroupElement4& e) { elements_[i] = e; }

 private:
  std::vector<Mat4> mats_;
  std::vector<std::optional<GroupElement4>> elements_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
  std::size_t identity_ = 0;
  std::optional<Presentation> presentation_;
};

/// Sorted indices into a FiniteGroup4.
using Subgroup = std::vector<std::size_t>;

inline constexpr std::size_t kMaxGroupOrder = 10000;

/// Builds (L|LK;R|RK)_s. Throws InputError on non-normal kernels, mismatched
/// quotients or an invalid pairing.
FiniteGroup4 build_group(const Presentation& p);
FiniteGroup4 build_group(const QuatGroupLabel& L, const QuatGroupLabel& LK, const QuatGroupLabel& R,
                         const QuatGroupLabel& RK, const CosetPairing& s = CosetPairing::automatic());

/// Gamma + sigma Gamma. Throws InputError when sigma is not a reflection or does not normalize Gamma.
FiniteGroup4 extend_with_reflection(const FiniteGroup4& gamma, const GroupElement4& sigma);

std::vector<Vec4> orbit(const FiniteGroup4& g, const Vec4& v);
std::vector<Subspace> orbit(const FiniteGroup4& g, const Subspace& s);

bool is_subgroup(const FiniteGroup4& g, const Subgroup& h);
/// {gamma : gamma H gamma^-1 = H}. Throws InputError when H is not a subgroup.
Subgroup normalizer(const FiniteGroup4& g, const Subgroup& h);
/// Elements mapping the subspace onto itself.
Subgroup setwise_stabilizer(const FiniteGroup4& g, const Subspace& s);
/// Elements fixing every vector of the subspace.
Subgroup pointwise_stabilizer(const FiniteGroup4& g, const Subspace& s);

/// Subgroup materialized as its own FiniteGroup4.
FiniteGroup4 materialize(const FiniteGroup4& g, const Subgroup& h);

}  // namespace hetnet
