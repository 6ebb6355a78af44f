// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/rcs.hpp"
#include "qdrt/rng.hpp"
#include "qdrt/scene.hpp"

#include <complex>
#include <vector>

namespace qdrt {

enum class PathKind { los, wall_reflection, ground_reflection, scatter };

const char* to_string(PathKind kind);

/// One ray contribution. path_loss_db = -20 log10 |amplitude|; excess delay
/// is relative to the line-of-sight arrival.
struct PropagationPath {
    PathKind kind = PathKind::los;
    std::complex<double> amplitude;
    double delay_s = 0.0;
    double path_loss_db = 0.0;
    double excess_delay_s = 0.0;
    double r1_m = 0.0; // LOS: the full TX-RX distance
    double r2_m = 0.0;
    int object_id = -1;      // scatter paths only
    double sigma_dbsm = 0.0; // scatter paths only (NaN otherwise)
};

enum class RcsMode { deterministic, quasi };

const char* to_string(RcsMode mode);
RcsMode rcs_mode_from_string(const std::string& name);

/// Fitted logistic law for quasi-deterministic RCS draws, in dBsm.
struct LogisticRcs {
    double location_dbsm = 0.0;
    double scale_dbsm = 0.0;
};

/// Where the bistatic RCS of a scatter path comes from: the exact physical
/// value (deterministic) or a draw from a fitted distribution (quasi).
struct RcsSource {
    RcsMode mode = RcsMode::deterministic;
    LogisticRcs quasi; // used in quasi mode; scale must be > 0
};

void validate(const RcsSource& source);

/// Line-of-sight path. Throws std::invalid_argument for coincident antennas.
PropagationPath trace_los(const Scene& scene);

/// First-order specular reflections: both walls (slab coefficient, TE) and
/// the ground (half-space coefficient, TM), image method. A path whose
/// specular point falls outside the finite wall extent is dropped.
std::vector<PropagationPath> trace_reflections(const Scene& scene);

/// Single-bounce scattering off a box object. In quasi mode `rng` supplies
/// the RCS draw and must be non-null.
PropagationPath trace_scatter(const Scene& scene, const BoxObject& object,
                              const RcsSource& source, PhiloxRng* rng, int object_id = -1);

/// Same for a cylinder (closed-form RCS in deterministic mode).
PropagationPath trace_scatter(const Scene& scene, const Cylinder& object,
                              const RcsSource& source, PhiloxRng* rng, int object_id = -1);

/// Aggregate of a traced path set: non-coherent power sums.
struct ChannelSummary {
    std::vector<PropagationPath> paths;
    double total_power = 0.0;                // sum |a|^2 over all paths
    double scatter_power = 0.0;              // sum |a|^2 over scatter paths
    double scatter_path_loss_db = 0.0;       // -10 log10(scatter_power); +inf if none
};

/// Throws std::invalid_argument for an empty path list.
ChannelSummary assemble_channel(std::vector<PropagationPath> paths);

} // namespace qdrt
