// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/rcs.hpp"

#include "qdrt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdrt {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

double sinc(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

Vec3 polygon_centroid(const Polygon& poly)
{
    // area-weighted fan centroid; valid for planar simple polygons
    const auto& v = poly.vertices;
    Vec3 acc{};
    double area2 = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        Vec3 a = v[i] - v[0];
        Vec3 b = v[i + 1] - v[0];
        double w = a.cross(b).norm();
        area2 += w;
        acc = acc + (v[0] + v[i] + v[i + 1]) * (w / 3.0);
    }
    if (area2 == 0.0)
        return v.empty() ? Vec3{} : v[0];
    return acc / area2;
}

double polygon_diameter(const Polygon& poly)
{
    double d = 0.0;
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < poly.vertices.size(); ++j)
            d = std::max(d, distance(poly.vertices[i], poly.vertices[j]));
    return d;
}

} // namespace

void validate(const BistaticGeometry& g)
{
    if (std::abs(g.incident_dir.norm() - 1.0) > 1e-12 ||
        std::abs(g.scattered_dir.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("bistatic geometry: direction vectors must be unit norm");
    if (!(g.wavelength_m > 0.0))
        throw std::invalid_argument("bistatic geometry: wavelength must be > 0");
}

Polygon make_polygon(std::vector<Vec3> vertices)
{
    if (vertices.size() < 3)
        throw std::invalid_argument("polygon: needs at least 3 vertices");
    // Newell's method
    Vec3 n{};
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec3& a = vertices[i];
        const Vec3& b = vertices[(i + 1) % vertices.size()];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    if (n.norm() == 0.0)
        throw std::invalid_argument("polygon: degenerate vertex loop");
    return {std::move(vertices), n.normalized()};
}

double polygon_area(const Polygon& poly)
{
    const auto& v = poly.vertices;
    Vec3 acc{};
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        acc = acc + (v[i] - v[0]).cross(v[i + 1] - v[0]);
    return 0.5 * acc.norm();
}

void validate(const FacetMesh& mesh)
{
    for (const Polygon& poly : mesh.facets) {
        if (poly.vertices.size() < 3)
            throw std::invalid_argument("mesh: facet with fewer than 3 vertices");
        if (std::abs(poly.normal.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("mesh: facet normal must be unit norm");
        double diam = polygon_diameter(poly);
        for (const Vec3& v : poly.vertices)
            if (std::abs((v - poly.vertices[0]).dot(poly.normal)) > 1e-9 * diam)
                throw std::invalid_argument("mesh: facet not planar");
        Polygon rebuilt = make_polygon(poly.vertices);
        if (rebuilt.normal.dot(poly.normal) < 0.999999)
            throw std::invalid_argument("mesh: facet winding inconsistent with normal");
    }
}

std::complex<double> po_polygon_field(const Polygon& poly, const BistaticGeometry& g)
{
    validate(g);
    if (poly.vertices.size() < 3)
        return 0.0;

    // visibility: facet must face the incoming ray and the receiver
    double cos_in = poly.normal.dot(g.incident_dir);
    double cos_out = poly.normal.dot(g.scattered_dir);
    if (cos_in >= 0.0 || cos_out <= 0.0)
        return 0.0;

    double k = 2.0 * kPi / g.wavelength_m;
    Vec3 w = g.incident_dir - g.scattered_dir;

    // I = integral over the facet of e^{-j k w . r} dA, written as
    // e^{j p . r0} * integral e^{j p_t . u} dA with p = -k w and u in-plane.
    Vec3 p = -k * w;
    Vec3 p_t = p - poly.normal * p.dot(poly.normal);
    double pt_norm = p_t.norm();

    const Vec3& r0 = poly.vertices[0];
    double area = polygon_area(poly);
    if (area == 0.0)
        return 0.0;

    cplx integral;
    if (pt_norm * polygon_diameter(poly) < 1e-6) {
        // specular pole: the in-plane phase is flat; area limit about the
        // centroid is second-order accurate in (|p_t| * diameter)
        Vec3 c = polygon_centroid(poly) - r0;
        integral = area * std::exp(cplx(0.0, p_t.dot(c)));
    } else {
        // Gordon's edge sum: the planar divergence theorem turns the surface
        // integral into a sum over edges with outward in-plane normals.
        cplx acc = 0.0;
        std::size_t n = poly.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec3 a = poly.vertices[i] - r0;
            Vec3 b = poly.vertices[(i + 1) % n] - r0;
            Vec3 edge = b - a;
            double len = edge.norm();
            if (len == 0.0)
                continue;
            Vec3 tangent = edge / len;
            Vec3 outward = tangent.cross(poly.normal); // in-plane, outward for CCW loops
            Vec3 mid = (a + b) * 0.5;
            double along = 0.5 * p_t.dot(edge);
            acc += p_t.dot(outward) * len * sinc(along) * std::exp(cplx(0.0, p_t.dot(mid)));
        }
        integral = acc * cplx(0.0, -1.0) / (pt_norm * pt_norm);
    }

    cplx global_phase = std::exp(cplx(0.0, p.dot(r0)));
    double obliquity = poly.normal.dot(w); // = cos_in - cos_out, negative here
    return (k / (4.0 * kPi)) * obliquity * integral * global_phase;
}

double mesh_rcs(const FacetMesh& mesh, const BistaticGeometry& g)
{
    if (mesh.facets.empty())
        throw std::invalid_argument("mesh_rcs: empty mesh");
    validate(g);
    cplx total = 0.0;
    for (const Polygon& poly : mesh.facets)
        total += po_polygon_field(poly, g);
    return 4.0 * kPi * std::norm(total);
}

double cylinder_rcs(const Cylinder& cyl, const BistaticGeometry& g)
{
    validate(g);
    if (!(cyl.radius_m > 0.0) || !(cyl.length_m > 0.0))
        throw std::invalid_argument("cylinder_rcs: radius and length must be > 0");

    // Stationary-phase physical optics on the circumference, exact phase
    // integral along the axis:
    //   sigma = (k a |w_t| L^2 / 2) * sinc^2(k w_z L / 2)
    // with w = incident - scattered. At the specular ring (w_z = 0, |w_t| = 2)
    // this is the classic 2 pi a L^2 / lambda peak.
    double k = 2.0 * kPi / g.wavelength_m;
    Vec3 w = g.incident_dir - g.scattered_dir;
    double w_z = w.z; // cylinder axis is +z
    double w_t = std::hypot(w.x, w.y);
    double axial = sinc(0.5 * k * w_z * cyl.length_m);
    return 0.5 * k * cyl.radius_m * w_t * cyl.length_m * cyl.length_m * axial * axial;
}

bool cylinder_in_validity_range(const Cylinder& cyl, double wavelength_m)
{
    return cyl.radius_m >= 10.0 * wavelength_m && cyl.length_m >= 10.0 * wavelength_m;
}

FacetMesh box_mesh(const BoxObject& box)
{
    double hx = 0.5 * box.length_m;
    double hy = 0.5 * box.width_m;
    double hz = 0.5 * box.height_m;
    const Vec3& c = box.center_position_m;

    auto corner = [&](double sx, double sy, double sz) {
        return Vec3{c.x + sx * hx, c.y + sy * hy, c.z + sz * hz};
    };

    FacetMesh mesh;
    // +x face
    mesh.facets.push_back(make_polygon(
        {corner(1, -1, -1), corner(1, 1, -1), corner(1, 1, 1), corner(1, -1, 1)}));
    // -x face
    mesh.facets.push_back(make_polygon(
        {corner(-1, 1, -1), corner(-1, -1, -1), corner(-1, -1, 1), corner(-1, 1, 1)}));
    // +y face
    mesh.facets.push_back(make_polygon(
        {corner(1, 1, -1), corner(-1, 1, -1), corner(-1, 1, 1), corner(1, 1, 1)}));
    // -y face
    mesh.facets.push_back(make_polygon(
        {corner(-1, -1, -1), corner(1, -1, -1), corner(1, -1, 1), corner(-1, -1, 1)}));
    // top; the bottom face rests on the ground and is omitted
    mesh.facets.push_back(make_polygon(
        {corner(-1, -1, 1), corner(1, -1, 1), corner(1, 1, 1), corner(-1, 1, 1)}));
    return mesh;
}

FacetMesh cylinder_mesh(const Cylinder& cyl, int segments)
{
    if (segments < 3)
        throw std::invalid_argument("cylinder_mesh: needs at least 3 segments");
    FacetMesh mesh;
    const Vec3& base = cyl.base_position_m;
    double top_z = base.z + cyl.length_m;

    auto rim = [&](int i, double z) {
        double ang = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(segments);
        return Vec3{base.x + cyl.radius_m * std::cos(ang), base.y + cyl.radius_m * std::sin(ang),
                    z};
    };

    for (int i = 0; i < segments; ++i) {
        mesh.facets.push_back(make_polygon(
            {rim(i, base.z), rim(i + 1, base.z), rim(i + 1, top_z), rim(i, top_z)}));
    }
    std::vector<Vec3> cap;
    cap.reserve(static_cast<std::size_t>(segments));
    for (int i = 0; i < segments; ++i)
        cap.push_back(rim(i, top_z));
    mesh.facets.push_back(make_polygon(std::move(cap)));
    return mesh;
}

BistaticGeometry geometry_from_angles(const RcsAngles& a, double wavelength_m)
{
    Vec3 incident{std::sin(a.theta_i) * std::cos(a.phi_i), std::sin(a.theta_i) * std::sin(a.phi_i),
                  -std::cos(a.theta_i)};
    Vec3 scattered{-std::sin(a.theta_s) * std::cos(a.phi_s),
                   -std::sin(a.theta_s) * std::sin(a.phi_s), std::cos(a.theta_s)};
    return {incident.normalized(), scattered.normalized(), wavelength_m};
}

RcsEvaluator rcs_evaluator(const FacetMesh& mesh)
{
    return [mesh](const BistaticGeometry& g) { return mesh_rcs(mesh, g); };
}

RcsEvaluator rcs_evaluator(const Cylinder& cyl)
{
    return [cyl](const BistaticGeometry& g) { return cylinder_rcs(cyl, g); };
}

RcsDataset generate_rcs_dataset(const RcsEvaluator& evaluate, const BistaticSampler& sampler,
                                double wavelength_m, std::size_t count, std::uint64_t seed,
                                unsigned threads)
{
    RcsDataset out;
    out.samples.resize(count);
    std::vector<unsigned char> floored(count, 0);

    parallel_for(count, threads, [&](std::size_t i) {
        PhiloxRng rng(seed, Stream::dataset, i);
        RcsAngles angles = sampler(rng);
        BistaticGeometry geom = geometry_from_angles(angles, wavelength_m);
        double sigma = evaluate(geom);
        double floor = std::pow(10.0, kRcsFloorDbsm / 10.0);
        double dbsm;
        if (sigma < floor) {
            dbsm = kRcsFloorDbsm;
            floored[i] = 1;
        } else {
            dbsm = 10.0 * std::log10(sigma);
        }
        out.samples[i] = {angles, geom, dbsm};
    });

    out.floored_count = static_cast<std::size_t>(
        std::count(floored.begin(), floored.end(), static_cast<unsigned char>(1)));
    return out;
}

RcsDataset generate_rcs_dataset(const FacetMesh& mesh, const BistaticSampler& sampler,
                                double wavelength_m, std::size_t count, std::uint64_t seed,
                                unsigned threads)
{
    return generate_rcs_dataset(rcs_evaluator(mesh), sampler, wavelength_m, count, seed, threads);
}

} // namespace qdrt
