#include "hetnet/quat.hpp"

#include "hetnet/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hetnet {

double Quaternion::norm() const { return std::sqrt(norm2()); }

bool Quaternion::is_unit(double eps) const { return std::abs(norm2() - 1.0) < eps; }

bool Quaternion::approx_equal(const Quaternion& o, double eps) const {
  for (int i = 0; i < 4; ++i)
    if (std::abs((*this)[i] - o[i]) >= eps) return false;
  return true;
}

Quaternion Quaternion::canonical_sign() const {
  for (int i = 0; i < 4; ++i) {
    if (std::abs((*this)[i]) > tol::kElementEq) return (*this)[i] > 0 ? *this : -*this;
  }
  return *this;
}

std::string Quaternion::str() const {
  std::ostringstream os;
  os.precision(6);
  os << "(" << c[0] << "," << c[1] << "," << c[2] << "," << c[3] << ")";
  return os.str();
}

Quaternion qmul(const Quaternion& q, const Quaternion& w) {
  return {q[0] * w[0] - q[1] * w[1] - q[2] * w[2] - q[3] * w[3],
          q[0] * w[1] + q[1] * w[0] + q[2] * w[3] - q[3] * w[2],
          q[0] * w[2] - q[1] * w[3] + q[2] * w[0] + q[3] * w[1],
          q[0] * w[3] + q[1] * w[2] - q[2] * w[1] + q[3] * w[0]};
}

Quaternion qconj(const Quaternion& q) { return {q[0], -q[1], -q[2], -q[3]}; }

std::string QuatGroupLabel::str() const {
  switch (family) {
    case QuatFamily::Z: return "Z" + std::to_string(n);
    case QuatFamily::D: return "D" + std::to_string(n);
    case QuatFamily::V: return "V";
    case QuatFamily::T: return "T";
    case QuatFamily::O: return "O";
    case QuatFamily::I: return "I";
  }
  return "?";
}

QuatGroupLabel QuatGroupLabel::parse(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')') text += ch;
  if (text.empty()) throw InputError("empty quaternion group label");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const std::string rest = text.substr(1);
  auto need_no_index = [&](QuatFamily f) {
    if (!rest.empty()) throw InputError("group label '" + raw + "' takes no index");
    return QuatGroupLabel{f, 1};
  };
  switch (head) {
    case 'V': return need_no_index(QuatFamily::V);
    case 'T': return need_no_index(QuatFamily::T);
    case 'O': return need_no_index(QuatFamily::O);
    case 'I': return need_no_index(QuatFamily::I);
    case 'Z':
    case 'D': {
      if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch)) || ch == '-';
          }))
        throw InputError("group label '" + raw + "' needs an integer index");
      const int n = std::stoi(rest);
      if (n < 1) throw InputError("group label '" + raw + "': index must be positive");
      return {head == 'Z' ? QuatFamily::Z : QuatFamily::D, n};
    }
    default: throw InputError("unknown quaternion group label '" + raw + "'");
  }
}

namespace {

std::size_t quat_hash(const Quaternion& q) { return rounded_hash(q.c.data(), 4); }

// All 12 even permutations of four slots.
std::vector<std::array<int, 4>> even_permutations() {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
    if (inversions % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ((v0,v1,v2,v3)) with every sign choice on the nonzero entries.
void add_even_perms_with_signs(const std::array<double, 4>& base, std::vector<Quaternion>& out) {
  for (const auto& p : even_permutations()) {
    for (int signs = 0; signs < 16; ++signs) {
      Quaternion q;
      for (int i = 0; i < 4; ++i) {
        const double v = base[static_cast<std::size_t>(i)];
        q.c[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = ((signs >> i) & 1) ? -v : v;
      }
      out.push_back(q);
    }
  }
}

std::vector<Quaternion> dedupe(const std::vector<Quaternion>& in) {
  std::vector<Quaternion> out;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (const auto& q : in) {
    const auto h = quat_hash(q);
    bool dup = false;
    auto [b, e] = seen.equal_range(h);
    for (auto it = b; it != e; ++it)
      if (out[it->second].approx_equal(q)) dup = true;
    if (!dup) {
      seen.emplace(h, out.size());
      out.push_back(q);
    }
  }
  return out;
}

std::vector<Quaternion> cyclic(int n) {
  std::vector<Quaternion> out;
  for (int r = 0; r < n; ++r) {
    const double a = 2.0 * std::numbers::pi * r / n;
    out.emplace_back(std::cos(a), 0.0, 0.0, std::sin(a));
  }
  return out;
}

std::vector<Quaternion> binary_tetrahedral() {
  std::vector<Quaternion> out;
  add_even_perms_with_signs({1.0, 0.0, 0.0, 0.0}, out);
  for (int signs = 0; signs < 16; ++signs) {
    Quaternion q;
    for (int i = 0; i < 4; ++i) q.c[static_cast<std::size_t>(i)] = ((signs >> i) & 1) ? -0.5 : 0.5;
    out.push_back(q);
  }
  return out;
}

}  // namespace

QuatGroup::QuatGroup(QuatGroupLabel label, std::vector<Quaternion> elements)
    : label_(label), elements_(dedupe(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(quat_hash(elements_[i]), i);
}

std::ptrdiff_t QuatGroup::index_of(const Quaternion& q) const {
  auto [b, e] = index_.equal_range(quat_hash(q));
  for (auto it = b; it != e; ++it)
    if (elements_[it->second].approx_equal(q)) return static_cast<std::ptrdiff_t>(it->second);
  return -1;
}

bool QuatGroup::is_closed() const {
  for (const auto& a : elements_)
    for (const auto& b : elements_)
      if (!contains(a * b)) return false;
  return true;
}

bool QuatGroup::contains_all(const QuatGroup& sub) const {
  return std::all_of(sub.elements().begin(), sub.elements().end(),
                     [&](const Quaternion& q) { return contains(q); });
}

QuatGroup finite_subgroup(const QuatGroupLabel& label) {
  std::vector<Quaternion> el;
  switch (label.family) {
    case QuatFamily::Z:
      if (label.n < 1) throw InputError("Z(n) requires n >= 1");
      el = cyclic(label.n);
      break;
    case QuatFamily::D: {
      if (label.n < 1) throw InputError("D(n) requires n >= 1");
      el = cyclic(2 * label.n);
      for (int r = 0; r < 2 * label.n; ++r) {
        const double a = std::numbers::pi * r / label.n;
        el.emplace_back(0.0, std::cos(a), std::sin(a), 0.0);
      }
      break;
    }
    case QuatFamily::V: add_even_perms_with_signs({1.0, 0.0, 0.0, 0.0}, el); break;
    case QuatFamily::T: el = binary_tetrahedral(); break;
    case QuatFamily::O: {
      el = binary_tetrahedral();
      const double h = std::sqrt(0.5);
      add_even_perms_with_signs({h, h, 0.0, 0.0}, el);
      break;
    }
    case QuatFamily::I: {
      el = binary_tetrahedral();
      const double tau = (std::sqrt(5.0) + 1.0) / 2.0;
      add_even_perms_with_signs({tau / 2.0, 0.5, 0.5 / tau, 0.0}, el);
      break;
    }
  }
  return QuatGroup(label, std::move(el));
}

QuatGroup finite_subgroup(QuatFamily family, int n) { return finite_subgroup(QuatGroupLabel{family, n}); }

}  // namespace hetnet
