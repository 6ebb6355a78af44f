// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/scene.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace qdrt {

using json = nlohmann::ordered_json;

const char* to_string(ObjectKind kind)
{
    return kind == ObjectKind::pedestrian ? "pedestrian" : "parked_car";
}

ObjectKind object_kind_from_string(const std::string& name)
{
    if (name == "pedestrian")
        return ObjectKind::pedestrian;
    if (name == "parked_car" || name == "car")
        return ObjectKind::parked_car;
    throw std::invalid_argument("unknown object kind '" + name + "'");
}

double wavelength(const Scene& scene)
{
    return kSpeedOfLight / scene.frequency_hz;
}

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw std::invalid_argument("scene: " + message);
}

const json& field(const json& j, const std::string& name)
{
    auto it = j.find(name);
    if (it == j.end())
        throw std::invalid_argument("scene config: missing field '" + name + "'");
    return *it;
}

double num(const json& j, const std::string& name)
{
    const json& v = field(j, name);
    if (!v.is_number())
        throw std::invalid_argument("scene config: field '" + name + "' must be a number");
    return v.get<double>();
}

Vec3 vec(const json& j, const std::string& name)
{
    const json& v = field(j, name);
    if (!v.is_array() || v.size() != 3)
        throw std::invalid_argument("scene config: field '" + name + "' must be a 3-vector");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

BoxDims dims(const json& j, const std::string& name)
{
    const json& v = field(j, name);
    return {num(v, "length_m"), num(v, "width_m"), num(v, "height_m")};
}

} // namespace

void validate(const Scene& s)
{
    require(s.frequency_hz > 0.0, "frequency_hz must be > 0");
    require(s.street_length_m > 0.0, "street_length_m must be > 0");
    require(s.street_width_m > 0.0, "street_width_m must be > 0");
    require(s.sidewalk_width_m > 0.0, "sidewalk_width_m must be > 0");
    require(s.wall_thickness_m > 0.0, "wall_thickness_m must be > 0");
    require(s.wall_rel_permittivity >= 1.0, "wall_rel_permittivity: permittivity >= 1");
    require(s.ground_rel_permittivity >= 1.0, "ground_rel_permittivity: permittivity >= 1");
    require(s.wall_y_positions_m[0] < s.wall_y_positions_m[1],
            "wall_y_positions_m must be increasing");

    double span = s.wall_y_positions_m[1] - s.wall_y_positions_m[0];
    require(std::abs(s.street_width_m + 2.0 * s.sidewalk_width_m - span) < 1e-9,
            "street_width_m + 2*sidewalk_width_m must equal the wall separation");

    for (const Vec3* p : {&s.tx_position_m, &s.rx_position_m}) {
        require(p->y > s.wall_y_positions_m[0] && p->y < s.wall_y_positions_m[1],
                "antenna must lie strictly between the wall planes");
        require(p->z > 0.0, "antenna must be above the ground plane");
    }

    require(s.lamppost.radius_m > 0.0, "lamppost.radius_m must be > 0");
    require(s.lamppost.length_m > 0.0, "lamppost.length_m must be > 0");
    require(s.lamppost.spacing_m > 0.0, "lamppost.spacing_m must be > 0");
    require(s.lamppost.count > 0, "lamppost.count must be > 0");
    require(!s.lamppost.line_offsets_m.empty(), "lamppost.line_offsets_m must be non-empty");

    for (const BoxDims* d : {&s.pedestrian_dims, &s.parked_car_dims})
        require(d->length_m > 0.0 && d->width_m > 0.0 && d->height_m > 0.0,
                "object dimensions must be > 0");
}

Scene default_scene()
{
    Scene s;
    s.frequency_hz = 60e9;
    s.street_length_m = 150.0;
    s.street_width_m = 12.0;
    s.sidewalk_width_m = 2.0;
    s.wall_y_positions_m = {0.0, 16.0};
    s.wall_thickness_m = 0.10;
    s.wall_rel_permittivity = 3.26;
    s.ground_rel_permittivity = 6.0;
    s.tx_position_m = {0.0, 2.0, 3.5};
    s.rx_position_m = {0.0, 15.0, 1.5};
    s.lamppost = {0.10, 3.0, 32.0, 10, {2.0, 14.0}};
    s.antenna_gain_dbi = 0.0;
    s.pedestrian_dims = {0.4, 0.4, 1.8};
    s.parked_car_dims = {4.55, 1.77, 1.24};
    return s;
}

Scene load_scene(const std::string& config_text)
{
    json j;
    try {
        j = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scene config: ") + e.what());
    }

    Scene s;
    s.frequency_hz = num(j, "frequency_hz");

    const json& street = field(j, "street");
    s.street_length_m = num(street, "length_m");
    s.street_width_m = num(street, "width_m");

    s.sidewalk_width_m = num(field(j, "sidewalk"), "width_m");

    const json& walls = field(j, "walls");
    const json& wy = field(walls, "y_positions_m");
    if (!wy.is_array() || wy.size() != 2)
        throw std::invalid_argument("scene config: field 'walls.y_positions_m' must hold two values");
    s.wall_y_positions_m = {wy[0].get<double>(), wy[1].get<double>()};
    s.wall_thickness_m = num(walls, "thickness_m");
    s.wall_rel_permittivity = num(walls, "rel_permittivity");

    s.ground_rel_permittivity = num(field(j, "ground"), "rel_permittivity");

    s.tx_position_m = vec(j, "tx_position_m");
    s.rx_position_m = vec(j, "rx_position_m");

    const json& lp = field(j, "lampposts");
    s.lamppost.radius_m = num(lp, "radius_m");
    s.lamppost.length_m = num(lp, "length_m");
    s.lamppost.spacing_m = num(lp, "spacing_m");
    s.lamppost.count = static_cast<int>(num(lp, "count"));
    const json& offsets = field(lp, "line_offsets_m");
    if (!offsets.is_array() || offsets.empty())
        throw std::invalid_argument("scene config: field 'lampposts.line_offsets_m' must be a non-empty array");
    s.lamppost.line_offsets_m.clear();
    for (const auto& v : offsets)
        s.lamppost.line_offsets_m.push_back(v.get<double>());

    s.antenna_gain_dbi = num(j, "antenna_gain_dbi");

    const json& objects = field(j, "objects");
    s.pedestrian_dims = dims(objects, "pedestrian");
    s.parked_car_dims = dims(objects, "parked_car");

    validate(s);
    return s;
}

std::string serialize_scene(const Scene& s)
{
    json j;
    j["frequency_hz"] = s.frequency_hz;
    j["street"] = {{"length_m", s.street_length_m}, {"width_m", s.street_width_m}};
    j["sidewalk"] = {{"width_m", s.sidewalk_width_m}};
    j["walls"] = {{"y_positions_m", {s.wall_y_positions_m[0], s.wall_y_positions_m[1]}},
                  {"thickness_m", s.wall_thickness_m},
                  {"rel_permittivity", s.wall_rel_permittivity}};
    j["ground"] = {{"rel_permittivity", s.ground_rel_permittivity}};
    j["tx_position_m"] = {s.tx_position_m.x, s.tx_position_m.y, s.tx_position_m.z};
    j["rx_position_m"] = {s.rx_position_m.x, s.rx_position_m.y, s.rx_position_m.z};
    j["lampposts"] = {{"radius_m", s.lamppost.radius_m},
                      {"length_m", s.lamppost.length_m},
                      {"spacing_m", s.lamppost.spacing_m},
                      {"count", s.lamppost.count},
                      {"line_offsets_m", s.lamppost.line_offsets_m}};
    j["antenna_gain_dbi"] = s.antenna_gain_dbi;
    j["objects"] = {{"pedestrian",
                     {{"length_m", s.pedestrian_dims.length_m},
                      {"width_m", s.pedestrian_dims.width_m},
                      {"height_m", s.pedestrian_dims.height_m}}},
                    {"parked_car",
                     {{"length_m", s.parked_car_dims.length_m},
                      {"width_m", s.parked_car_dims.width_m},
                      {"height_m", s.parked_car_dims.height_m}}}};
    return j.dump(2) + "\n";
}

std::vector<Cylinder> make_lampposts(const Scene& s)
{
    const LamppostSpec& lp = s.lamppost;
    std::vector<Cylinder> posts;
    posts.reserve(static_cast<std::size_t>(lp.count));

    // Consecutive posts alternate sides; per-line x spacing is lp.spacing_m.
    std::size_t sides = lp.line_offsets_m.size();
    double step = lp.spacing_m / static_cast<double>(sides);
    double x0 = -0.5 * step * static_cast<double>(lp.count - 1);
    for (int i = 0; i < lp.count; ++i) {
        double x = x0 + step * static_cast<double>(i);
        double y = lp.line_offsets_m[static_cast<std::size_t>(i) % sides];
        posts.push_back({lp.radius_m, lp.length_m, Vec3{x, y, 0.0}});
    }
    return posts;
}

BoxObject make_box(const Scene& s, ObjectKind kind, const Vec3& center)
{
    const BoxDims& d = kind == ObjectKind::pedestrian ? s.pedestrian_dims : s.parked_car_dims;
    BoxObject box{kind, d.length_m, d.width_m, d.height_m, center, true};
    if (center.z - 0.5 * d.height_m < -1e-12)
        throw std::invalid_argument("scene: box must stand on or above the ground");
    return box;
}

} // namespace qdrt
