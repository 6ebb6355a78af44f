// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/raytrace.hpp"

#include "qdrt/em.hpp"
#include "qdrt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qdrt {

namespace {

constexpr double kPi = std::numbers::pi;

double antenna_gain_factor(const Scene& scene)
{
    // isotropic per-end gains; kept explicit so patterns can slot in later
    double g = std::pow(10.0, scene.antenna_gain_dbi / 20.0);
    return g * g;
}

double los_delay(const Scene& scene)
{
    return distance(scene.tx_position_m, scene.rx_position_m) / kSpeedOfLight;
}

PropagationPath finish_path(PathKind kind, std::complex<double> amplitude, double total_dist,
                            double tau_los)
{
    PropagationPath path;
    path.kind = kind;
    path.amplitude = amplitude;
    path.delay_s = total_dist / kSpeedOfLight;
    path.path_loss_db = path_loss_db(std::abs(amplitude));
    path.excess_delay_s = path.delay_s - tau_los;
    path.sigma_dbsm = std::numeric_limits<double>::quiet_NaN();
    return path;
}

// specular reflection off the plane {coordinate axis `axis` == plane_pos}
struct SpecularHit {
    Vec3 point;
    double r1 = 0.0;
    double r2 = 0.0;
    double incidence_rad = 0.0; // from the surface normal
};

SpecularHit image_specular(const Vec3& tx, const Vec3& rx, int axis, double plane_pos)
{
    auto get = [&](const Vec3& v) { return axis == 1 ? v.y : v.z; };

    Vec3 image = tx;
    if (axis == 1)
        image.y = 2.0 * plane_pos - tx.y;
    else
        image.z = 2.0 * plane_pos - tx.z;

    Vec3 dir = rx - image;
    double denom = get(dir);
    double t = (plane_pos - get(image)) / denom;
    Vec3 point = image + dir * t;

    SpecularHit hit;
    hit.point = point;
    hit.r1 = distance(tx, point);
    hit.r2 = distance(point, rx);
    // angle from the plane normal: the normal component of the unit ray
    double cos_inc = std::abs(denom) / dir.norm();
    hit.incidence_rad = std::acos(std::clamp(cos_inc, 0.0, 1.0));
    return hit;
}

} // namespace

const char* to_string(PathKind kind)
{
    switch (kind) {
    case PathKind::los: return "los";
    case PathKind::wall_reflection: return "wall_reflection";
    case PathKind::ground_reflection: return "ground_reflection";
    default: return "scatter";
    }
}

const char* to_string(RcsMode mode)
{
    return mode == RcsMode::deterministic ? "deterministic" : "quasi";
}

RcsMode rcs_mode_from_string(const std::string& name)
{
    if (name == "deterministic" || name == "d-rt")
        return RcsMode::deterministic;
    if (name == "quasi" || name == "qd-rt")
        return RcsMode::quasi;
    throw std::invalid_argument("unknown RCS mode '" + name + "'");
}

void validate(const RcsSource& source)
{
    if (source.mode == RcsMode::quasi && !(source.quasi.scale_dbsm > 0.0))
        throw std::invalid_argument("rcs source: logistic scale must be > 0");
}

PropagationPath trace_los(const Scene& scene)
{
    double r0 = distance(scene.tx_position_m, scene.rx_position_m);
    if (r0 == 0.0)
        throw std::invalid_argument("trace_los: TX and RX coincide");
    double lambda = wavelength(scene);
    double a0 = friis_los_amplitude(r0, lambda) * antenna_gain_factor(scene);
    PropagationPath path = finish_path(PathKind::los, a0, r0, r0 / kSpeedOfLight);
    path.r1_m = r0;
    return path;
}

std::vector<PropagationPath> trace_reflections(const Scene& scene)
{
    double lambda = wavelength(scene);
    double tau0 = los_delay(scene);
    double gain = antenna_gain_factor(scene);
    const Vec3& tx = scene.tx_position_m;
    const Vec3& rx = scene.rx_position_m;

    std::vector<PropagationPath> paths;

    struct Reflector {
        PathKind kind;
        int axis;
        double plane;
        Polarization pol;
    };
    // vertical polarization: E lies in the plane of incidence for the ground
    // bounce (TM) and perpendicular to it for the vertical walls (TE)
    const Reflector reflectors[] = {
        {PathKind::wall_reflection, 1, scene.wall_y_positions_m[0], Polarization::TE},
        {PathKind::wall_reflection, 1, scene.wall_y_positions_m[1], Polarization::TE},
        {PathKind::ground_reflection, 2, 0.0, Polarization::TM},
    };

    for (const Reflector& ref : reflectors) {
        SpecularHit hit = image_specular(tx, rx, ref.axis, ref.plane);

        // finite-extent guard; with infinite-height walls and in-canyon
        // antennas the specular point is always valid
        bool inside = std::abs(hit.point.x) <= 0.5 * scene.street_length_m;
        if (ref.axis == 1)
            inside = inside && hit.point.z >= 0.0;
        else
            inside = inside && hit.point.y >= scene.wall_y_positions_m[0] &&
                     hit.point.y <= scene.wall_y_positions_m[1];
        if (!inside)
            continue;

        ReflectionQuery query;
        query.incidence_angle_rad = hit.incidence_rad;
        query.polarization = ref.pol;
        query.wavelength_m = lambda;

        std::complex<double> coeff;
        if (ref.kind == PathKind::ground_reflection) {
            query.medium = HalfSpace{scene.ground_rel_permittivity};
            coeff = fresnel_half_space(query);
        } else {
            query.medium = Slab{scene.wall_rel_permittivity, scene.wall_thickness_m};
            coeff = fresnel_slab(query);
        }

        double total = hit.r1 + hit.r2;
        std::complex<double> amplitude = coeff * (lambda / (4.0 * kPi * total)) * gain;
        PropagationPath path = finish_path(ref.kind, amplitude, total, tau0);
        path.r1_m = hit.r1;
        path.r2_m = hit.r2;
        paths.push_back(path);
    }
    return paths;
}

namespace {

PropagationPath scatter_from_center(const Scene& scene, const Vec3& center, double sigma_exact,
                                    bool have_exact, const RcsSource& source, PhiloxRng* rng,
                                    int object_id)
{
    validate(source);
    if (center.y <= scene.wall_y_positions_m[0] || center.y >= scene.wall_y_positions_m[1])
        throw std::invalid_argument("trace_scatter: object outside the canyon");

    double r1 = distance(scene.tx_position_m, center);
    double r2 = distance(center, scene.rx_position_m);
    if (r1 == 0.0 || r2 == 0.0)
        throw std::invalid_argument("trace_scatter: object coincides with an antenna");

    double sigma_dbsm;
    if (source.mode == RcsMode::deterministic) {
        if (!have_exact)
            throw std::invalid_argument("trace_scatter: no deterministic RCS available");
        double floor = std::pow(10.0, kRcsFloorDbsm / 10.0);
        sigma_dbsm = 10.0 * std::log10(std::max(sigma_exact, floor));
    } else {
        if (rng == nullptr)
            throw std::invalid_argument("trace_scatter: quasi mode needs an RNG");
        sigma_dbsm = sample_logistic(*rng, source.quasi.location_dbsm, source.quasi.scale_dbsm);
    }
    double sigma = std::pow(10.0, sigma_dbsm / 10.0);

    double lambda = wavelength(scene);
    // |a|^2 = (1 / 4 pi r1^2) sigma (1 / 4 pi r2^2) (lambda^2 / 4 pi)
    double a2 = sigma * lambda * lambda /
                (std::pow(4.0 * kPi, 3) * r1 * r1 * r2 * r2);
    double amplitude = std::sqrt(a2) * antenna_gain_factor(scene);

    PropagationPath path =
        finish_path(PathKind::scatter, amplitude, r1 + r2, los_delay(scene));
    path.r1_m = r1;
    path.r2_m = r2;
    path.object_id = object_id;
    path.sigma_dbsm = sigma_dbsm;
    return path;
}

} // namespace

PropagationPath trace_scatter(const Scene& scene, const BoxObject& object,
                              const RcsSource& source, PhiloxRng* rng, int object_id)
{
    double sigma = 0.0;
    if (source.mode == RcsMode::deterministic) {
        const Vec3& c = object.center_position_m;
        double r1 = distance(scene.tx_position_m, c);
        double r2 = distance(c, scene.rx_position_m);
        if (r1 == 0.0 || r2 == 0.0)
            throw std::invalid_argument("trace_scatter: object coincides with an antenna");
        BistaticGeometry geom{(c - scene.tx_position_m) / r1, (scene.rx_position_m - c) / r2,
                              wavelength(scene)};
        sigma = mesh_rcs(box_mesh(object), geom);
    }
    return scatter_from_center(scene, object.center_position_m, sigma, true, source, rng,
                               object_id);
}

PropagationPath trace_scatter(const Scene& scene, const Cylinder& object,
                              const RcsSource& source, PhiloxRng* rng, int object_id)
{
    Vec3 center = object.base_position_m + Vec3{0.0, 0.0, 0.5 * object.length_m};
    double sigma = 0.0;
    if (source.mode == RcsMode::deterministic) {
        double r1 = distance(scene.tx_position_m, center);
        double r2 = distance(center, scene.rx_position_m);
        if (r1 == 0.0 || r2 == 0.0)
            throw std::invalid_argument("trace_scatter: object coincides with an antenna");
        BistaticGeometry geom{(center - scene.tx_position_m) / r1,
                              (scene.rx_position_m - center) / r2, wavelength(scene)};
        sigma = cylinder_rcs(object, geom);
    }
    return scatter_from_center(scene, center, sigma, true, source, rng, object_id);
}

ChannelSummary assemble_channel(std::vector<PropagationPath> paths)
{
    if (paths.empty())
        throw std::invalid_argument("assemble_channel: empty path list");

    ChannelSummary summary;
    summary.paths = std::move(paths);
    for (const PropagationPath& path : summary.paths) {
        double p = std::norm(path.amplitude);
        summary.total_power += p;
        if (path.kind == PathKind::scatter)
            summary.scatter_power += p;
    }
    summary.scatter_path_loss_db = summary.scatter_power > 0.0
                                       ? -10.0 * std::log10(summary.scatter_power)
                                       : std::numeric_limits<double>::infinity();
    return summary;
}

} // namespace qdrt
