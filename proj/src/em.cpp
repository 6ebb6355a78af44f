// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/em.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdrt {

namespace {

using cplx = std::complex<double>;

void check_angle(double theta)
{
    if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2.0))
        throw std::invalid_argument("reflection: incidence angle must be in [0, pi/2)");
}

// Transverse impedances normalized to k0 (common factors cancel in the
// reflection quotient). kz = sqrt(eps - sin^2 theta) in units of k0.
cplx transverse_impedance(cplx eps, cplx kz, Polarization pol)
{
    return pol == Polarization::TE ? 1.0 / kz : kz / eps;
}

} // namespace

std::complex<double> fresnel_interface(cplx eps, double theta, Polarization pol)
{
    check_angle(theta);
    double s2 = std::sin(theta) * std::sin(theta);
    cplx kz1 = std::cos(theta);
    cplx kz2 = std::sqrt(eps - s2); // principal branch: decaying into the medium
    cplx z1 = transverse_impedance(1.0, kz1, pol);
    cplx z2 = transverse_impedance(eps, kz2, pol);
    return (z2 - z1) / (z2 + z1);
}

std::complex<double> slab_reflection(cplx eps, double thickness, double wavelength, double theta,
                                     Polarization pol)
{
    check_angle(theta);
    if (thickness < 0.0)
        throw std::invalid_argument("reflection: slab thickness must be >= 0");
    if (wavelength <= 0.0)
        throw std::invalid_argument("reflection: wavelength must be > 0");

    // Airy summation of internal multiple reflections: the back face (slab ->
    // air) coefficient is -r, so R = r (1 - e^{-2j beta}) / (1 - r^2 e^{-2j beta}).
    double k0 = 2.0 * std::numbers::pi / wavelength;
    cplx r = fresnel_interface(eps, theta, pol);
    double s2 = std::sin(theta) * std::sin(theta);
    cplx beta = k0 * thickness * std::sqrt(eps - s2);
    cplx phase = std::exp(cplx(0.0, -2.0) * beta);
    return r * (1.0 - phase) / (1.0 - r * r * phase);
}

namespace {

void check_query(const ReflectionQuery& q)
{
    check_angle(q.incidence_angle_rad);
    if (const auto* hs = std::get_if<HalfSpace>(&q.medium)) {
        if (hs->rel_permittivity < 1.0)
            throw std::invalid_argument("reflection: permittivity >= 1 required");
    } else {
        const auto& slab = std::get<Slab>(q.medium);
        if (slab.rel_permittivity < 1.0)
            throw std::invalid_argument("reflection: permittivity >= 1 required");
        if (slab.thickness_m <= 0.0)
            throw std::invalid_argument("reflection: slab thickness must be > 0");
        if (q.wavelength_m <= 0.0)
            throw std::invalid_argument("reflection: wavelength must be > 0");
    }
}

} // namespace

std::complex<double> fresnel_half_space(const ReflectionQuery& q)
{
    check_query(q);
    const auto* hs = std::get_if<HalfSpace>(&q.medium);
    if (hs == nullptr)
        throw std::invalid_argument("fresnel_half_space: query medium is not a half-space");
    return fresnel_interface(hs->rel_permittivity, q.incidence_angle_rad, q.polarization);
}

std::complex<double> fresnel_slab(const ReflectionQuery& q)
{
    check_query(q);
    const auto* slab = std::get_if<Slab>(&q.medium);
    if (slab == nullptr)
        throw std::invalid_argument("fresnel_slab: query medium is not a slab");
    return slab_reflection(slab->rel_permittivity, slab->thickness_m, q.wavelength_m,
                           q.incidence_angle_rad, q.polarization);
}

double friis_los_amplitude(double r0, double wavelength)
{
    if (!(r0 > 0.0))
        throw std::invalid_argument("friis_los_amplitude: r0 must be > 0");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("friis_los_amplitude: wavelength must be > 0");
    return wavelength / (4.0 * std::numbers::pi * r0);
}

double path_loss_db(double amplitude)
{
    return -20.0 * std::log10(amplitude);
}

} // namespace qdrt
