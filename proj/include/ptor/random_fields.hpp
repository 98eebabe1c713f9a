#pragma once

#include <cstdint>

#include "ptor/tensor.hpp"

namespace ptor {

/// Seeded band-limited random smooth fields: trigonometric polynomials of
/// degree ≤ n/8, rescaled to the requested max-abs amplitude.
ScalarField random_scalar(const TorusGrid& grid, std::uint64_t seed,
                          double amplitude);
ComplexField random_complex(const TorusGrid& grid, std::uint64_t seed,
                            double amplitude);
OneFormField random_one_form(const TorusGrid& grid, std::uint64_t seed,
                             double amplitude);
ConnectionField random_connection(const TorusGrid& grid, std::uint64_t seed,
                                  double amplitude);

/// Identity plus a band-limited symmetric perturbation; amplitude must stay
/// below ~0.4 for positivity.
MetricField random_metric(const TorusGrid& grid, std::uint64_t seed,
                          double amplitude);
ConformalStructure random_conformal(const TorusGrid& grid, std::uint64_t seed,
                                    double amplitude);

PointTensor random_point_tensor(int dim, std::uint64_t seed);

/// Identity plus a random symmetric perturbation, positive definite.
std::vector<double> random_point_metric(int dim, std::uint64_t seed);

}  // namespace ptor
