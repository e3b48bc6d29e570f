#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hetnet {

using Point2 = std::array<double, 2>;

enum class CuspKind { Thin, Thick, Neither };
std::string to_string(CuspKind k);

/// V(a1, a2, alpha) = {|a1 x1 + a2 x2| < max(|x1|, |x2|)^alpha}.
struct CuspSpec {
  double a1 = 0.0, a2 = 0.0;
  double alpha = 1.0;            // thin: the set's exponent; thick: the complement's
  CuspKind kind = CuspKind::Neither;
  double set_alpha = 1.0;        // exponent fitted to the set
  double complement_alpha = 1.0; // exponent fitted to the largest angular gap
  int bins = 0;                  // radius bins used by the fits
};

struct CuspOptions {
  double margin = 0.05;          // thin needs alpha > 1 + margin
  std::size_t min_points = 100;
  double delta = std::numeric_limits<double>::infinity();  // ignore points with max(|x1|,|x2|) >= delta
  double r_min = 0.0;            // ignore points with max(|x1|,|x2|) <= r_min (sampler-truncated core)
  double bin_decades = 0.1;      // width of the radius bins
  double window_decades = 1.0;   // fits use the smallest window of this many decades
  std::size_t min_bin_points = 3;
  std::size_t min_bins = 4;
};

/// Fits the limiting direction and the exponent alpha of a sampled planar set.
/// The set's transverse extent at radius r is measured as the angular width of
/// its points in a thin radius bin times r; the complement is measured by the
/// widest angular gap. Throws InputError when too few points accumulate at 0.
CuspSpec cusp_classify(const std::vector<Point2>& pts, const CuspOptions& opt = {});

/// Membership in V(a1, a2, alpha).
bool in_cusp(const Point2& x, double a1, double a2, double alpha);

struct LocalMapData;

/// Thick cusp in the incoming section whose image under a local map
/// (A x1^alpha, A2 x2 |x1|^beta) is thin.
/// below: V = {|x2| < |x1|^h, |x2| < |x1|^(s - beta)} with alpha - beta < h < 1 (alpha < 1 + beta);
/// otherwise V = {|x1|^h < |x2| < |x1|^(s - beta)} with 1 < h < alpha - beta.
/// In both cases 0 < s < 1 + beta.
struct ThickCuspShape {
  bool below = true;
  double h = 1.0, s = 0.0;
  double beta = 0.0;          // local-map beta the shape was built for
  double image_alpha = 1.0;   // predicted exponent of the thin image, alpha/(h + beta) or its inverse
};

/// Midpoints of the admissible (h, s) intervals. Throws DegenerateError when
/// alpha = 1 + beta within 1e-9 and InputError when beta <= -1.
ThickCuspShape thick_cusp_shape(const LocalMapData& m);

/// Points of V with |x1| log-uniform in [x1_min, x1_max], |x2| log-uniform in
/// its admissible range (capped at `radius`) and random signs.
std::vector<Point2> sample_thick_cusp(const ThickCuspShape& shape, std::size_t n, double x1_min, double x1_max,
                                      double radius, std::uint64_t seed);

}  // namespace hetnet
