#include "hetnet/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace hetnet {

namespace {

double residual_at(const EquivariantField& f, const Vec4& x) {
  const Vec4 fx = f(x);
  const double scale = 1.0 + fx.norm();
  double worst = 0.0;
  for (const auto& g : f.group().matrices()) worst = std::max(worst, (f(g * x) - g * fx).norm() / scale);
  return worst;
}

Point2 compose_one(const LocalMapData& phi, const Eigen::Matrix2d& psi, const Point2& x) {
  const auto [y1, y2] = phi(x[0], x[1]);
  const Eigen::Vector2d z = psi * Eigen::Vector2d(y1, y2);
  return {z[0], z[1]};
}

}  // namespace

double equivariance_residual_serial(const EquivariantField& f, const std::vector<Vec4>& samples) {
  return f.equivariance_residual(samples);
}

double equivariance_residual_parallel(const EquivariantField& f, const std::vector<Vec4>& samples) {
  double worst = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) worst = std::max(worst, residual_at(f, samples[static_cast<std::size_t>(i)]));
  return worst;
}

std::vector<Itinerary> attraction_batch_serial(const AttractionContext& ctx, const std::vector<std::uint64_t>& seeds,
                                               double epsilon, const AttractionOptions& opt) {
  std::vector<Itinerary> out;
  out.reserve(seeds.size());
  for (auto s : seeds) out.push_back(detect_attraction(ctx, random_seed_near_network(ctx, epsilon, s), opt));
  return out;
}

std::vector<Itinerary> attraction_batch_parallel(const AttractionContext& ctx, const std::vector<std::uint64_t>& seeds,
                                                 double epsilon, const AttractionOptions& opt) {
  std::vector<Itinerary> out(seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
  // Runs differ widely in length, so hand them out one at a time.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detect_attraction(ctx, random_seed_near_network(ctx, epsilon, seeds[k]), opt);
  }
  return out;
}

std::vector<Point2> compose_maps_serial(const LocalMapData& phi, const Eigen::Matrix2d& psi,
                                        const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& x : pts) out.push_back(compose_one(phi, psi, x));
  return out;
}

std::vector<Point2> compose_maps_parallel(const LocalMapData& phi, const Eigen::Matrix2d& psi,
                                          const std::vector<Point2>& pts) {
  std::vector<Point2> out(pts.size());
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = compose_one(phi, psi, pts[static_cast<std::size_t>(i)]);
  return out;
}

int kernel_threads() { return omp_get_max_threads(); }

}  // namespace hetnet
