// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include <complex>
#include <variant>

namespace qdrt {

enum class Polarization { TE, TM };

/// Dielectric half-space (ground).
struct HalfSpace {
    double rel_permittivity = 1.0;
};

/// Free-standing dielectric slab (wall), air on both sides.
struct Slab {
    double rel_permittivity = 1.0;
    double thickness_m = 0.0;
};

/// One reflection evaluation. The incidence angle is measured from the
/// surface normal, 0 <= angle < pi/2.
struct ReflectionQuery {
    double incidence_angle_rad = 0.0;
    Polarization polarization = Polarization::TE;
    std::variant<HalfSpace, Slab> medium;
    double wavelength_m = 0.0;
};

// Complex reflection coefficients use the transverse-impedance sign
// convention with time dependence e^{+j omega t}; TE and TM agree at normal
// incidence. Complex permittivity (eps' - j eps'') models a lossy medium.

/// Air/half-space Fresnel coefficient at the given angle.
std::complex<double> fresnel_interface(std::complex<double> rel_permittivity,
                                       double incidence_angle_rad, Polarization pol);

/// Single-layer slab coefficient including internal multiple reflections.
std::complex<double> slab_reflection(std::complex<double> rel_permittivity, double thickness_m,
                                     double wavelength_m, double incidence_angle_rad,
                                     Polarization pol);

/// Query front-ends; validate the query and dispatch on the medium.
/// Throws std::invalid_argument on invariant violations or medium mismatch.
std::complex<double> fresnel_half_space(const ReflectionQuery& q);
std::complex<double> fresnel_slab(const ReflectionQuery& q);

/// Line-of-sight amplitude magnitude lambda / (4 pi r0).
/// Throws std::invalid_argument for r0 <= 0.
double friis_los_amplitude(double r0_m, double wavelength_m);

/// Path loss -20 log10 |amplitude| in dB.
double path_loss_db(double amplitude_magnitude);

} // namespace qdrt
