// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/rng.hpp"

namespace qdrt {

/// Parameters of the angular coverage law of an antenna looking down on two
/// mirror strips of ground, each spanning the across-street distances
/// (strip_near_m, strip_far_m) from the antenna's ground projection and the
/// full canyon length along the street.
struct CoverageParams {
    double delta_z_m = 0.0;      // antenna height above the object reference plane
    double strip_near_m = 0.0;   // a
    double strip_far_m = 0.0;    // b
    double canyon_length_m = 0.0;
    double strip_width_m = 0.0;  // b - a
    double phi0_rad = 0.0;       // arctan(2a / canyon length)
};

/// Fills the derived fields and validates.
CoverageParams make_coverage_params(double delta_z_m, double strip_near_m, double strip_far_m,
                                    double canyon_length_m);

/// Throws std::invalid_argument on invariant violations.
void validate(const CoverageParams& params);

struct AngleSample {
    double theta = 0.0; // polar angle from the vertical, (0, pi/2)
    double phi = 0.0;   // azimuth from the street axis, signed; the sign
                        // carries the strip side, |phi| in (phi0, pi - phi0)
};

/// True when (theta, phi) maps back to a point on one of the two strips.
/// Equivalent to the arctan elevation bounds plus the along-street clip.
bool coverage_in_support(const CoverageParams& params, double theta, double phi);

/// Joint density (Delta z)^2 sin(theta) / (2 L1 W2 cos^3(theta)) inside the
/// support, 0 outside. Integrates to 1 over both strip-side lobes.
double coverage_pdf(const CoverageParams& params, double theta, double phi);

/// Exact, rejection-free sampling: a point uniform over the two strips,
/// converted to angles. Distributed per coverage_pdf.
AngleSample sample_coverage(const CoverageParams& params, PhiloxRng& rng);

} // namespace qdrt
