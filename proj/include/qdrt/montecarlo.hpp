// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/coverage.hpp"
#include "qdrt/raytrace.hpp"
#include "qdrt/rcs.hpp"
#include "qdrt/scene.hpp"
#include "qdrt/stats.hpp"

#include <cstdint>
#include <vector>

namespace qdrt {

/// Uniform placement ranges for one object kind. Objects draw x uniformly,
/// pick one of the y strips with equal probability (a zero-width strip is a
/// fixed lane) and sit at the fixed center height z.
struct PlacementRanges {
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<std::array<double, 2>> y_strips;
    double z = 0.0;
};

/// Built-in ranges: pedestrians uniform over the two sidewalks, parked cars
/// on the two curb lanes, object centers at z = 1 m.
PlacementRanges default_placement_ranges(ObjectKind kind);

struct McExperiment {
    Scene scene;
    ObjectKind object_kind = ObjectKind::pedestrian;
    int n_objects = 1;       // 1..10
    int replications = 1000;
    RcsMode mode = RcsMode::deterministic;
    PlacementRanges ranges;
    std::uint64_t master_seed = 0;
    LogisticRcs quasi; // required in quasi mode
    unsigned threads = 0;
    bool include_los_reflections = false; // add LOS + wall/ground paths to the statistic
};

struct McResult {
    std::vector<double> path_loss_db;    // one aggregate per replication
    std::vector<double> excess_delay_ns; // pooled: replication-major, object-minor
    ObjectKind object_kind = ObjectKind::pedestrian;
    RcsMode mode = RcsMode::deterministic;
    int n_objects = 0;
    std::uint64_t master_seed = 0;
};

/// Runs the experiment. Replication r draws its placements from substream
/// (master_seed, placement, r) and its quasi RCS values from
/// (master_seed, rcs_draw, r), so the two modes see identical placements for
/// the same master seed, and results are bit-identical for any worker count.
/// Throws std::invalid_argument for invalid configuration.
McResult run_experiment(const McExperiment& experiment);

struct ModeComparison {
    GofResult path_loss;
    GofResult excess_delay;
    McResult first;
    McResult second;
};

/// Runs two modes and compares their path-loss and excess-delay samples with
/// the two-sample Cramer-von Mises test. Each mode's run seed derives from
/// (seed, mode), so comparing a mode against itself reproduces identical
/// samples, while distinct modes get independent placements.
ModeComparison compare_modes(const Scene& scene, ObjectKind kind, int n_objects,
                             int replications, std::uint64_t seed, double alpha,
                             const LogisticRcs& quasi, int n_permutations = 9999,
                             unsigned threads = 0, RcsMode first = RcsMode::deterministic,
                             RcsMode second = RcsMode::quasi);

enum class CalibrationSampler {
    placement, // angles induced by uniform placements (matches the experiment)
    coverage,  // independent per-antenna draws from the coverage law
};

const char* to_string(CalibrationSampler sampler);

/// Angle sampler for RCS dataset generation, in the coverage-angle
/// convention of geometry_from_angles.
BistaticSampler make_bistatic_sampler(const Scene& scene, ObjectKind kind,
                                      const PlacementRanges& ranges, CalibrationSampler which);

/// Coverage-law parameters seen from one antenna: the far strip of the given
/// placement ranges, at the antenna's height above the object plane.
CoverageParams antenna_coverage_params(const Scene& scene, const Vec3& antenna,
                                       const PlacementRanges& ranges, double strip_halfwidth_m);

struct QuasiCalibration {
    LogisticRcs source;
    FitResult fit;
    RcsDataset dataset;
};

/// Generates a deterministic RCS dataset for the object kind and fits the
/// logistic law that quasi mode draws from.
QuasiCalibration calibrate_quasi_source(const Scene& scene, ObjectKind kind,
                                        const PlacementRanges& ranges, std::size_t count,
                                        std::uint64_t seed,
                                        CalibrationSampler sampler = CalibrationSampler::placement,
                                        unsigned threads = 0);

} // namespace qdrt
