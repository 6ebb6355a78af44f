// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/vec3.hpp"

#include <array>
#include <string>
#include <vector>

namespace qdrt {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact

enum class ObjectKind { pedestrian, parked_car };

const char* to_string(ObjectKind kind);
ObjectKind object_kind_from_string(const std::string& name);

/// Lamppost line description: `count` posts laid out along the street on the
/// lines y = line_offsets_m[i], consecutive posts alternating sides, with
/// per-line x spacing `spacing_m`.
struct LamppostSpec {
    double radius_m = 0.0;
    double length_m = 0.0;
    double spacing_m = 0.0;
    int count = 0;
    std::vector<double> line_offsets_m;
};

/// Box dimensions: length along x (street axis), width along y, height along z.
struct BoxDims {
    double length_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
};

/// Rectangular scatterer model (pedestrian or parked car), axis-aligned.
struct BoxObject {
    ObjectKind kind = ObjectKind::pedestrian;
    double length_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
    Vec3 center_position_m{};
    bool conductor = true;
};

/// Vertical circular cylinder (lamppost); axis +z from the base point.
struct Cylinder {
    double radius_m = 0.0;
    double length_m = 0.0;
    Vec3 base_position_m{};
};

/// Street-canyon scenario: two infinite-height dielectric walls at
/// y = wall_y_positions_m, dielectric ground at z = 0, street along x.
/// Immutable after construction; safe to share across workers.
struct Scene {
    double frequency_hz = 0.0;
    double street_length_m = 0.0;  // L1, shared by street, sidewalks and walls
    double street_width_m = 0.0;   // W1
    double sidewalk_width_m = 0.0; // W2, one sidewalk per side
    std::array<double, 2> wall_y_positions_m{0.0, 0.0};
    double wall_thickness_m = 0.0;
    double wall_rel_permittivity = 1.0;
    double ground_rel_permittivity = 1.0;
    Vec3 tx_position_m{};
    Vec3 rx_position_m{};
    LamppostSpec lamppost;
    double antenna_gain_dbi = 0.0; // isotropic, per end
    BoxDims pedestrian_dims;
    BoxDims parked_car_dims;
};

/// Carrier wavelength c0 / f0 in meters.
double wavelength(const Scene& scene);

/// Parses and validates a scene from its JSON config document.
/// Throws std::invalid_argument naming the offending field or constraint.
Scene load_scene(const std::string& config_text);

/// Serializes a scene to the JSON config format; load_scene(serialize_scene(s))
/// reproduces `s` field by field.
std::string serialize_scene(const Scene& scene);

/// The built-in default scenario (60 GHz street canyon).
Scene default_scene();

/// Validates all scene invariants; throws std::invalid_argument on violation.
void validate(const Scene& scene);

/// Instantiates the lamppost line: exactly lamppost.count cylinders standing
/// on the ground, alternating sides.
std::vector<Cylinder> make_lampposts(const Scene& scene);

/// Builds a box scatterer of the given kind at `center`, dimensions from the
/// scene catalog.
BoxObject make_box(const Scene& scene, ObjectKind kind, const Vec3& center);

} // namespace qdrt
