// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/coverage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdrt {

CoverageParams make_coverage_params(double delta_z_m, double strip_near_m, double strip_far_m,
                                    double canyon_length_m)
{
    CoverageParams p;
    p.delta_z_m = delta_z_m;
    p.strip_near_m = strip_near_m;
    p.strip_far_m = strip_far_m;
    p.canyon_length_m = canyon_length_m;
    p.strip_width_m = strip_far_m - strip_near_m;
    p.phi0_rad = std::atan(2.0 * strip_near_m / canyon_length_m);
    validate(p);
    return p;
}

void validate(const CoverageParams& p)
{
    if (!(p.strip_near_m > 0.0) || !(p.strip_far_m > p.strip_near_m))
        throw std::invalid_argument("coverage: need 0 < strip_near < strip_far");
    if (!(p.canyon_length_m > 0.0))
        throw std::invalid_argument("coverage: canyon_length_m must be > 0");
    if (!(p.strip_width_m > 0.0) ||
        std::abs(p.strip_width_m - (p.strip_far_m - p.strip_near_m)) > 1e-9)
        throw std::invalid_argument("coverage: strip_width_m must equal strip_far - strip_near");
    if (p.delta_z_m == 0.0)
        throw std::invalid_argument("coverage: delta_z_m must be nonzero");
}

bool coverage_in_support(const CoverageParams& p, double theta, double phi)
{
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2.0))
        return false;
    // invert to the ground point seen under (theta, phi)
    double rho = std::abs(p.delta_z_m) * std::tan(theta);
    double x = rho * std::cos(phi);
    double y = std::abs(rho * std::sin(phi));
    return y > p.strip_near_m && y < p.strip_far_m && std::abs(x) < 0.5 * p.canyon_length_m;
}

double coverage_pdf(const CoverageParams& p, double theta, double phi)
{
    if (!coverage_in_support(p, theta, phi))
        return 0.0;
    double c = std::cos(theta);
    return p.delta_z_m * p.delta_z_m * std::sin(theta) /
           (2.0 * p.canyon_length_m * p.strip_width_m * c * c * c);
}

AngleSample sample_coverage(const CoverageParams& p, PhiloxRng& rng)
{
    // draw order: x, side, y — keep stable, callers rely on reproducibility
    double x = rng.uniform(-0.5 * p.canyon_length_m, 0.5 * p.canyon_length_m);
    double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
    double y = side * rng.uniform(p.strip_near_m, p.strip_far_m);
    double rho = std::hypot(x, y);
    return {std::atan(rho / std::abs(p.delta_z_m)), std::atan2(y, x)};
}

} // namespace qdrt
