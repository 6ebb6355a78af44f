// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/montecarlo.hpp"

#include "qdrt/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace qdrt {

PlacementRanges default_placement_ranges(ObjectKind kind)
{
    PlacementRanges ranges;
    ranges.x_min = -75.0;
    ranges.x_max = 75.0;
    ranges.z = 1.0;
    if (kind == ObjectKind::pedestrian)
        ranges.y_strips = {{0.0, 2.0}, {14.0, 16.0}};
    else
        ranges.y_strips = {{3.0, 3.0}, {13.0, 13.0}};
    return ranges;
}

namespace {

void validate_experiment(const McExperiment& e)
{
    validate(e.scene);
    if (e.replications <= 0)
        throw std::invalid_argument("mc: replications must be > 0");
    if (e.n_objects < 1 || e.n_objects > 10)
        throw std::invalid_argument("mc: n_objects must be in 1..10");
    if (!(e.ranges.x_min < e.ranges.x_max))
        throw std::invalid_argument("mc: empty x placement range");
    if (e.ranges.y_strips.empty())
        throw std::invalid_argument("mc: empty y placement range");
    double half = 0.5 * e.scene.street_length_m;
    if (e.ranges.x_min < -half || e.ranges.x_max > half)
        throw std::invalid_argument("mc: x placement range exceeds the canyon");
    for (const auto& strip : e.ranges.y_strips) {
        if (strip[0] > strip[1])
            throw std::invalid_argument("mc: empty y placement strip");
        if (strip[0] < e.scene.wall_y_positions_m[0] ||
            strip[1] > e.scene.wall_y_positions_m[1])
            throw std::invalid_argument("mc: y placement range exceeds the canyon");
    }
    if (!(e.ranges.z > 0.0))
        throw std::invalid_argument("mc: object center height must be > 0");
    if (e.mode == RcsMode::quasi && !(e.quasi.scale_dbsm > 0.0))
        throw std::invalid_argument("mc: quasi mode needs a fitted logistic source");
}

Vec3 draw_placement(const PlacementRanges& ranges, PhiloxRng& rng)
{
    // draw order x, strip, y is part of the reproducibility contract
    double x = rng.uniform(ranges.x_min, ranges.x_max);
    std::size_t strip = static_cast<std::size_t>(rng.below(ranges.y_strips.size()));
    double y = rng.uniform(ranges.y_strips[strip][0], ranges.y_strips[strip][1]);
    return {x, y, ranges.z};
}

} // namespace

McResult run_experiment(const McExperiment& e)
{
    validate_experiment(e);

    std::size_t reps = static_cast<std::size_t>(e.replications);
    std::size_t n = static_cast<std::size_t>(e.n_objects);

    McResult result;
    result.path_loss_db.resize(reps);
    result.excess_delay_ns.resize(reps * n);
    result.object_kind = e.object_kind;
    result.mode = e.mode;
    result.n_objects = e.n_objects;
    result.master_seed = e.master_seed;

    RcsSource source;
    source.mode = e.mode;
    source.quasi = e.quasi;

    parallel_for(reps, e.threads, [&](std::size_t rep) {
        PhiloxRng placement_rng(e.master_seed, Stream::placement, rep);
        PhiloxRng rcs_rng(e.master_seed, Stream::rcs_draw, rep);

        std::vector<PropagationPath> paths;
        paths.reserve(n + (e.include_los_reflections ? 4 : 0));
        for (std::size_t j = 0; j < n; ++j) {
            Vec3 center = draw_placement(e.ranges, placement_rng);
            BoxObject box = make_box(e.scene, e.object_kind, center);
            PropagationPath path =
                trace_scatter(e.scene, box, source, &rcs_rng, static_cast<int>(j));
            result.excess_delay_ns[rep * n + j] = path.excess_delay_s * 1e9;
            paths.push_back(path);
        }

        double statistic;
        if (e.include_los_reflections) {
            paths.push_back(trace_los(e.scene));
            for (PropagationPath& p : trace_reflections(e.scene))
                paths.push_back(p);
            ChannelSummary summary = assemble_channel(std::move(paths));
            statistic = -10.0 * std::log10(summary.total_power);
        } else {
            ChannelSummary summary = assemble_channel(std::move(paths));
            statistic = summary.scatter_path_loss_db;
        }
        result.path_loss_db[rep] = statistic;
    });

    return result;
}

ModeComparison compare_modes(const Scene& scene, ObjectKind kind, int n_objects,
                             int replications, std::uint64_t seed, double alpha,
                             const LogisticRcs& quasi, int n_permutations, unsigned threads,
                             RcsMode first, RcsMode second)
{
    McExperiment base;
    base.scene = scene;
    base.object_kind = kind;
    base.n_objects = n_objects;
    base.replications = replications;
    base.ranges = default_placement_ranges(kind);
    base.quasi = quasi;
    base.threads = threads;

    McExperiment ea = base;
    ea.mode = first;
    ea.master_seed = derive_seed(seed, static_cast<std::uint64_t>(first) + 1);
    McExperiment eb = base;
    eb.mode = second;
    eb.master_seed = derive_seed(seed, static_cast<std::uint64_t>(second) + 1);

    ModeComparison cmp;
    cmp.first = run_experiment(ea);
    cmp.second = run_experiment(eb);
    cmp.path_loss = cvm_two_sample(cmp.first.path_loss_db, cmp.second.path_loss_db,
                                   n_permutations, derive_seed(seed, 0x50), alpha, threads);
    cmp.excess_delay = cvm_two_sample(cmp.first.excess_delay_ns, cmp.second.excess_delay_ns,
                                      n_permutations, derive_seed(seed, 0x51), alpha, threads);
    return cmp;
}

const char* to_string(CalibrationSampler sampler)
{
    return sampler == CalibrationSampler::placement ? "placement" : "coverage";
}

CoverageParams antenna_coverage_params(const Scene& scene, const Vec3& antenna,
                                       const PlacementRanges& ranges, double strip_halfwidth_m)
{
    // pick the strip farthest across the street from the antenna; the
    // coverage law mirrors it to both sides
    double best_lo = 0.0;
    double best_hi = -1.0;
    for (const auto& strip : ranges.y_strips) {
        double lo = std::max({strip[0] - antenna.y, antenna.y - strip[1], 0.0});
        double hi = std::max(std::abs(strip[0] - antenna.y), std::abs(strip[1] - antenna.y));
        if (hi > best_hi) {
            best_lo = lo;
            best_hi = hi;
        }
    }
    best_lo -= strip_halfwidth_m;
    best_hi += strip_halfwidth_m;
    double dz = antenna.z - ranges.z;
    return make_coverage_params(dz, best_lo, best_hi, scene.street_length_m);
}

BistaticSampler make_bistatic_sampler(const Scene& scene, ObjectKind kind,
                                      const PlacementRanges& ranges, CalibrationSampler which)
{
    if (which == CalibrationSampler::placement) {
        Vec3 tx = scene.tx_position_m;
        Vec3 rx = scene.rx_position_m;
        return [tx, rx, ranges](PhiloxRng& rng) {
            Vec3 p = draw_placement(ranges, rng);
            Vec3 d = p - tx; // propagation direction of the incident ray
            Vec3 e = p - rx; // from RX toward the object
            RcsAngles angles;
            angles.theta_i = std::atan2(std::hypot(d.x, d.y), -d.z);
            angles.phi_i = std::atan2(d.y, d.x);
            angles.theta_s = std::atan2(std::hypot(e.x, e.y), -e.z);
            angles.phi_s = std::atan2(e.y, e.x);
            return angles;
        };
    }

    double halfwidth =
        kind == ObjectKind::parked_car ? 0.5 * scene.parked_car_dims.width_m : 0.0;
    CoverageParams tx_params =
        antenna_coverage_params(scene, scene.tx_position_m, ranges, halfwidth);
    CoverageParams rx_params =
        antenna_coverage_params(scene, scene.rx_position_m, ranges, halfwidth);
    return [tx_params, rx_params](PhiloxRng& rng) {
        AngleSample in = sample_coverage(tx_params, rng);
        AngleSample out = sample_coverage(rx_params, rng);
        return RcsAngles{in.theta, in.phi, out.theta, out.phi};
    };
}

QuasiCalibration calibrate_quasi_source(const Scene& scene, ObjectKind kind,
                                        const PlacementRanges& ranges, std::size_t count,
                                        std::uint64_t seed, CalibrationSampler sampler,
                                        unsigned threads)
{
    FacetMesh mesh = box_mesh(make_box(scene, kind, {0.0, 0.0, ranges.z}));
    BistaticSampler angles = make_bistatic_sampler(scene, kind, ranges, sampler);
    RcsDataset dataset =
        generate_rcs_dataset(mesh, angles, wavelength(scene), count, seed, threads);

    std::vector<double> dbsm(dataset.samples.size());
    for (std::size_t i = 0; i < dataset.samples.size(); ++i)
        dbsm[i] = dataset.samples[i].rcs_dbsm;
    FitResult fit = fit_logistic(dbsm);

    QuasiCalibration calibration;
    calibration.source = {fit.params[0], fit.params[1]};
    calibration.fit = fit;
    calibration.dataset = std::move(dataset);
    return calibration;
}

} // namespace qdrt
