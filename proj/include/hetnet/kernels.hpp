#pragma once

#include "hetnet/cusp.hpp"
#include "hetnet/dynamics.hpp"
#include "hetnet/stability.hpp"
#include "hetnet/vfield.hpp"

#include <cstdint>
#include <vector>

namespace hetnet {

// Batch kernels. Each has a serial reference with identical results; the
// parallel versions split the outer loop with OpenMP and never share mutable state.

/// max over samples and group elements of |f(gx) - g f(x)| / (1 + |f(x)|).
double equivariance_residual_serial(const EquivariantField& f, const std::vector<Vec4>& samples);
double equivariance_residual_parallel(const EquivariantField& f, const std::vector<Vec4>& samples);

/// One detect_attraction run per seed, starting at random_seed_near_network(ctx, epsilon, seed).
std::vector<Itinerary> attraction_batch_serial(const AttractionContext& ctx, const std::vector<std::uint64_t>& seeds,
                                               double epsilon, const AttractionOptions& opt = {});
std::vector<Itinerary> attraction_batch_parallel(const AttractionContext& ctx, const std::vector<std::uint64_t>& seeds,
                                                 double epsilon, const AttractionOptions& opt = {});

/// psi(phi(x)) for every point: local map followed by the linear global map.
std::vector<Point2> compose_maps_serial(const LocalMapData& phi, const Eigen::Matrix2d& psi,
                                        const std::vector<Point2>& pts);
std::vector<Point2> compose_maps_parallel(const LocalMapData& phi, const Eigen::Matrix2d& psi,
                                          const std::vector<Point2>& pts);

/// Number of OpenMP threads the parallel kernels will use.
int kernel_threads();

}  // namespace hetnet
