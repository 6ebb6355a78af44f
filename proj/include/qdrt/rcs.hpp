// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/rng.hpp"
#include "qdrt/scene.hpp"
#include "qdrt/vec3.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qdrt {

/// One bistatic arrangement. `incident_dir` points from the transmitter
/// toward the scatterer, `scattered_dir` from the scatterer toward the
/// receiver; both are unit vectors (checked to 1e-12).
struct BistaticGeometry {
    Vec3 incident_dir;
    Vec3 scattered_dir;
    double wavelength_m = 0.0;
};

void validate(const BistaticGeometry& g);

/// Planar facet with an explicit outward unit normal. Vertices wind
/// counter-clockwise as seen from the outward side.
struct Polygon {
    std::vector<Vec3> vertices;
    Vec3 normal;
};

/// Builds a polygon from a vertex loop, deriving the outward normal from the
/// winding order (Newell's method).
Polygon make_polygon(std::vector<Vec3> vertices);

double polygon_area(const Polygon& poly);

struct FacetMesh {
    std::vector<Polygon> facets;
};

/// Checks planarity (1e-9 of the diameter), normal consistency and unit norm.
void validate(const FacetMesh& mesh);

/// Physical-optics scattering amplitude f of a flat conducting polygon,
/// normalized so that sigma = 4 pi |f|^2. The surface integral is reduced to
/// Gordon's sum over the polygon edges; at the specular pole the analytic
/// area limit is used. A facet that is not illuminated (incident direction
/// not arriving from the outward side) or that cannot radiate toward the
/// receiver contributes zero.
std::complex<double> po_polygon_field(const Polygon& poly, const BistaticGeometry& g);

/// Coherent physical-optics RCS of a facet mesh in m^2.
/// Throws std::invalid_argument for an empty mesh.
double mesh_rcs(const FacetMesh& mesh, const BistaticGeometry& g);

/// Closed-form physical-optics bistatic RCS of a finite conducting cylinder
/// with vertical axis, in m^2. Peak 2 pi R L^2 / lambda at the specular
/// direction, sinc^2 falloff along the axis mismatch.
double cylinder_rcs(const Cylinder& cyl, const BistaticGeometry& g);

/// True when the cylinder is large enough (>= 10 lambda) for the
/// high-frequency closed form to be trustworthy.
bool cylinder_in_validity_range(const Cylinder& cyl, double wavelength_m);

/// Five-face mesh of a box scatterer (bottom face excluded: it rests on the
/// ground and never participates).
FacetMesh box_mesh(const BoxObject& box);

/// Faceted cylinder: `segments` side rectangles plus the top cap.
FacetMesh cylinder_mesh(const Cylinder& cyl, int segments);

/// Elevation/azimuth angle pairs for one bistatic sample, in the coverage
/// convention: theta measured from the vertical at the antenna, phi from the
/// street axis, antenna above the object reference plane.
struct RcsAngles {
    double theta_i = 0.0;
    double phi_i = 0.0;
    double theta_s = 0.0;
    double phi_s = 0.0;
};

/// Converts coverage angles to the unit direction pair: the incident ray
/// travels downward from the transmitter, the scattered ray upward toward
/// the receiver.
BistaticGeometry geometry_from_angles(const RcsAngles& angles, double wavelength_m);

struct RcsSample {
    RcsAngles angles;
    BistaticGeometry geometry;
    double rcs_dbsm = 0.0;
};

/// Values below the floor are clamped so dBsm stays finite at deep nulls.
inline constexpr double kRcsFloorDbsm = -100.0;

struct RcsDataset {
    std::vector<RcsSample> samples;
    std::size_t floored_count = 0; // samples clamped at kRcsFloorDbsm
};

using RcsEvaluator = std::function<double(const BistaticGeometry&)>;
using BistaticSampler = std::function<RcsAngles(PhiloxRng&)>;

RcsEvaluator rcs_evaluator(const FacetMesh& mesh);
RcsEvaluator rcs_evaluator(const Cylinder& cyl);

/// Draws `count` angle pairs from the sampler and evaluates the RCS for
/// each. Sample i uses the substream (seed, dataset, i), so the result is
/// bit-identical for any worker count.
RcsDataset generate_rcs_dataset(const RcsEvaluator& evaluate, const BistaticSampler& sampler,
                                double wavelength_m, std::size_t count, std::uint64_t seed,
                                unsigned threads = 0);

RcsDataset generate_rcs_dataset(const FacetMesh& mesh, const BistaticSampler& sampler,
                                double wavelength_m, std::size_t count, std::uint64_t seed,
                                unsigned threads = 0);

} // namespace qdrt
