#include "hetnet/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace hetnet {

std::size_t rounded_hash(const double* data, std::size_t n) {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = std::llround(data[i] / tol::kHashGrid);
    h ^= std::hash<long long>{}(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool Subspace::contains(const Vec4& v, double eps) const {
  const double scale = std::max(1.0, v.norm());
  return (v - projector * v).norm() < eps * scale;
}

bool Subspace::same_as(const Subspace& other, double eps) const {
  if (dim() != other.dim()) return false;
  return (projector - other.projector).cwiseAbs().maxCoeff() < eps;
}

Subspace Subspace::from_projector(const Mat4& p) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (p + p.transpose()));
  std::vector<int> keep;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()[i] > 0.5) keep.push_back(i);
  Subspace s;
  s.basis.resize(4, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) s.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  s.projector = s.basis * s.basis.transpose();
  return s;
}

Subspace Subspace::span(const std::vector<Vec4>& vectors) {
  Mat4 gram = Mat4::Zero();
  for (const auto& v : vectors) gram += v * v.transpose();
  Eigen::SelfAdjointEigenSolver<Mat4> es(gram);
  const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
  std::vector<int> keep;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()[i] > tol::kRank * top) keep.push_back(i);
  Subspace s;
  s.basis.resize(4, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) s.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  s.projector = s.basis * s.basis.transpose();
  return s;
}

Subspace Subspace::null_space_of_psd(const Mat4& m, double eps) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.transpose()));
  std::vector<int> keep;
  for (int i = 0; i < 4; ++i)
    if (std::abs(es.eigenvalues()[i]) < eps) keep.push_back(i);
  Subspace s;
  s.basis.resize(4, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) s.basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  s.projector = s.basis * s.basis.transpose();
  return s;
}

Subspace Subspace::fixed_space(const Mat4& m) {
  const Mat4 d = m - Mat4::Identity();
  return null_space_of_psd(d.transpose() * d);
}

Subspace Subspace::intersect(const Subspace& a, const Subspace& b) {
  return null_space_of_psd(2.0 * Mat4::Identity() - a.projector - b.projector);
}

Subspace Subspace::transformed(const Mat4& g) const {
  Subspace s;
  s.basis = g * basis;
  s.projector = g * projector * g.transpose();
  return s;
}

Subspace Subspace::complement_in(const Subspace& outer) const {
  return null_space_of_psd(Mat4::Identity() - outer.projector + projector);
}

std::size_t SubspaceSet::insert(const Subspace& s, bool* inserted) {
  const auto found = find(s);
  if (found >= 0) {
    if (inserted) *inserted = false;
    return static_cast<std::size_t>(found);
  }
  index_.emplace(rounded_hash(s.projector.data(), 16), items_.size());
  items_.push_back(s);
  if (inserted) *inserted = true;
  return items_.size() - 1;
}

std::ptrdiff_t SubspaceSet::find(const Subspace& s) const {
  auto [b, e] = index_.equal_range(rounded_hash(s.projector.data(), 16));
  for (auto it = b; it != e; ++it)
    if (items_[it->second].same_as(s)) return static_cast<std::ptrdiff_t>(it->second);
  return -1;
}

std::size_t VectorSet::insert(const Vec4& v, bool* inserted) {
  const auto found = find(v);
  if (found >= 0) {
    if (inserted) *inserted = false;
    return static_cast<std::size_t>(found);
  }
  index_.emplace(rounded_hash(v.data(), 4), items_.size());
  items_.push_back(v);
  if (inserted) *inserted = true;
  return items_.size() - 1;
}

std::ptrdiff_t VectorSet::find(const Vec4& v) const {
  auto [b, e] = index_.equal_range(rounded_hash(v.data(), 4));
  for (auto it = b; it != e; ++it)
    if ((items_[it->second] - v).cwiseAbs().maxCoeff() < tol::kElementEq) return static_cast<std::ptrdiff_t>(it->second);
  return -1;
}

bool lex_less(const Mat4& a, const Mat4& b, double eps) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double d = a(i, j) - b(i, j);
      if (std::abs(d) >= eps) return d < 0;
    }
  return false;
}

}  // namespace hetnet
