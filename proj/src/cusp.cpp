#include "hetnet/cusp.hpp"

#include "hetnet/errors.hpp"
#include "hetnet/stability.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hetnet {

std::string to_string(CuspKind k) {
  switch (k) {
    case CuspKind::Thin: return "thin";
    case CuspKind::Thick: return "thick";
    case CuspKind::Neither: return "neither";
  }
  return "neither";
}

bool in_cusp(const Point2& x, double a1, double a2, double alpha) {
  const double r = std::max(std::abs(x[0]), std::abs(x[1]));
  return std::abs(a1 * x[0] + a2 * x[1]) < std::pow(r, alpha);
}

namespace {

struct Sample {
  double r;      // Euclidean radius; within sqrt(2) of max(|x1|, |x2|), so exponents agree
  Point2 x;
};

struct Bin {
  double log_r = 0.0;            // mean log10 radius
  std::vector<const Sample*> pts;
};

// Exponent from log(extent) = alpha log(r) + const, with extent = angle * r.
double exponent_from_angles(const std::vector<double>& log_r, const std::vector<double>& angle) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < angle.size(); ++k) {
    if (!(angle[k] > 0)) continue;
    x.push_back(log_r[k]);
    y.push_back(std::log10(angle[k]) + log_r[k]);
  }
  if (x.size() < 2) return std::numeric_limits<double>::infinity();
  return fit_line(x, y).slope;
}

}  // namespace

CuspSpec cusp_classify(const std::vector<Point2>& pts, const CuspOptions& opt) {
  std::vector<Sample> s;
  for (const auto& p : pts) {
    const double r = std::max(std::abs(p[0]), std::abs(p[1]));
    if (r > opt.r_min && r > 0 && r < opt.delta && std::isfinite(r)) s.push_back({std::hypot(p[0], p[1]), p});
  }
  if (s.size() < opt.min_points)
    throw InputError("cusp_classify: " + std::to_string(s.size()) + " points near the origin, need " +
                     std::to_string(opt.min_points));
  std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.r < b.r; });

  // Window start: skip a few isolated points closest to the origin.
  const std::size_t k0 = std::min<std::size_t>(s.size() - 1, opt.min_bin_points);
  const double lo = std::log10(s[k0].r);
  const double hi_all = std::log10(s.back().r);
  double window = opt.window_decades;
  std::vector<Bin> bins;
  const auto make_bins = [&](double w) {
    bins.clear();
    const int nb = std::max(1, static_cast<int>(std::round(w / opt.bin_decades)));
    bins.resize(static_cast<std::size_t>(nb));
    for (const auto& smp : s) {
      const double lr = std::log10(smp.r);
      if (lr < lo || lr >= lo + w) continue;
      const int b = std::min(nb - 1, static_cast<int>((lr - lo) / opt.bin_decades));
      bins[static_cast<std::size_t>(b)].pts.push_back(&smp);
    }
    std::erase_if(bins, [&](const Bin& b) { return b.pts.size() < opt.min_bin_points; });
    for (auto& b : bins) {
      double acc = 0;
      for (const auto* p : b.pts) acc += std::log10(p->r);
      b.log_r = acc / static_cast<double>(b.pts.size());
    }
  };
  make_bins(window);
  while (bins.size() < opt.min_bins && lo + window < hi_all) {
    window += opt.bin_decades;
    make_bins(window);
  }
  if (bins.size() < opt.min_bins)
    throw InputError("cusp_classify: points do not accumulate at the origin over enough radius bins");

  // Limiting direction: principal axis of the unit vectors in the window.
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  for (const auto& b : bins)
    for (const auto* p : b.pts) {
      const Eigen::Vector2d u = Eigen::Vector2d(p->x[0], p->x[1]).normalized();
      M += u * u.transpose();
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
  Eigen::Vector2d d = es.eigenvectors().col(1);
  const Eigen::Vector2d dn(-d[1], d[0]);

  CuspSpec out;
  out.bins = static_cast<int>(bins.size());

  // Set: folded angular width about d.
  std::vector<double> log_r, width, gap;
  double center0 = 0.0, gap_center0 = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    double mn = std::numbers::pi, mx = -std::numbers::pi;
    std::vector<double> theta;
    for (const auto* p : bins[k].pts) {
      const Eigen::Vector2d x(p->x[0], p->x[1]);
      double a = std::atan2(dn.dot(x), d.dot(x));
      if (a > std::numbers::pi / 2) a -= std::numbers::pi;
      if (a <= -std::numbers::pi / 2) a += std::numbers::pi;
      mn = std::min(mn, a);
      mx = std::max(mx, a);
      theta.push_back(std::atan2(x[1], x[0]));
    }
    std::sort(theta.begin(), theta.end());
    double best = 2 * std::numbers::pi - (theta.back() - theta.front());
    double bc = theta.back() + 0.5 * best;
    for (std::size_t j = 0; j + 1 < theta.size(); ++j) {
      if (theta[j + 1] - theta[j] > best) {
        best = theta[j + 1] - theta[j];
        bc = 0.5 * (theta[j] + theta[j + 1]);
      }
    }
    log_r.push_back(bins[k].log_r);
    width.push_back(mx - mn);
    gap.push_back(best);
    if (k == 0) {
      center0 = 0.5 * (mn + mx);
      gap_center0 = bc;
    }
  }
  out.set_alpha = exponent_from_angles(log_r, width);
  out.complement_alpha = exponent_from_angles(log_r, gap);

  if (out.set_alpha > 1.0 + opt.margin) {
    const double phi = std::atan2(d[1], d[0]) + center0;
    out.kind = CuspKind::Thin;
    out.alpha = out.set_alpha;
    out.a1 = -std::sin(phi);
    out.a2 = std::cos(phi);
  } else if (out.complement_alpha > 1.0 + opt.margin) {
    out.kind = CuspKind::Thick;
    out.alpha = out.complement_alpha;
    out.a1 = -std::sin(gap_center0);
    out.a2 = std::cos(gap_center0);
  } else {
    out.kind = CuspKind::Neither;
    out.alpha = out.set_alpha;
    out.a1 = dn[0];
    out.a2 = dn[1];
  }
  return out;
}

ThickCuspShape thick_cusp_shape(const LocalMapData& m) {
  if (!(m.beta > -1.0)) throw InputError("thick cusp: needs beta > -1");
  const double gap = m.alpha - 1.0 - m.beta;
  if (std::abs(gap) < 1e-9) throw DegenerateError("thick cusp: alpha = 1 + beta, the image exponent is 1");
  ThickCuspShape c;
  c.below = gap < 0;
  const double lo = c.below ? m.alpha - m.beta : 1.0;
  const double hi = c.below ? 1.0 : m.alpha - m.beta;
  c.h = 0.5 * (lo + hi);
  c.s = 0.5 * (1.0 + m.beta);
  c.beta = m.beta;
  const double g = (c.h + m.beta) / m.alpha;
  c.image_alpha = c.below ? g : 1.0 / g;
  return c;
}

std::vector<Point2> sample_thick_cusp(const ThickCuspShape& shape, std::size_t n, double x1_min, double x1_max,
                                      double radius, std::uint64_t seed) {
  if (!(x1_min > 0) || !(x1_max > x1_min) || x1_max >= 1.0 || !(radius > 0))
    throw InputError("thick cusp sampling: need 0 < x1_min < x1_max < 1 and radius > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> out;
  out.reserve(n);
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (++attempts > 100 * n + 1000) throw InputError("thick cusp sampling: admissible region is empty");
    const double x1 = x1_min * std::pow(x1_max / x1_min, u(rng));
    double top = std::min(radius, std::pow(x1, shape.s - shape.beta));
    double bottom;
    if (shape.below) {
      // The set reaches x2 = 0; six decades under the top cover the boundary that matters.
      top = std::min(top, std::pow(x1, shape.h));
      bottom = top * 1e-6;
    } else {
      bottom = std::pow(x1, shape.h);
    }
    if (!(top > bottom) || !(bottom > 0)) continue;
    const double x2 = bottom * std::pow(top / bottom, u(rng));
    const double sx = u(rng) < 0.5 ? -1.0 : 1.0;
    out.push_back({sx * x1, u(rng) < 0.5 ? -x2 : x2});
  }
  return out;
}

}  // namespace hetnet
