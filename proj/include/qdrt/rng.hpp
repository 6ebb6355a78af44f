// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qdrt {

/// Substream purposes. Streams with different purposes never overlap, so a
/// single master seed can drive placement, RCS draws, dataset angles and
/// permutation shuffles without cross-talk, and results stay independent of
/// worker scheduling.
enum class Stream : std::uint64_t {
    generic = 0,
    placement = 1,   // Monte-Carlo object positions
    rcs_draw = 2,    // quasi-deterministic RCS draws
    dataset = 3,     // RCS dataset angle sampling
    permutation = 4, // CvM permutation shuffles
    synthetic = 5,   // synthetic samples (fits, tests)
    derive = 6,      // seed derivation
};

/// Counter-based generator (Philox4x64-10, Salmon et al. 2011).
///
/// The 256-bit counter is laid out as {position, index, subindex, purpose}
/// and the 128-bit key as {seed, constant}. Any (seed, purpose, index,
/// subindex) tuple names an independent substream; `position` advances as
/// numbers are drawn. Verified against the published known-answer vectors
/// (see tests).
class PhiloxRng {
  public:
    using result_type = std::uint64_t;

    PhiloxRng(std::uint64_t seed, Stream purpose, std::uint64_t index = 0,
              std::uint64_t subindex = 0);

    /// One keyed 256-bit block. Exposed for known-answer tests.
    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key);

    std::uint64_t operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform double in [a, b).
    double uniform(double a, double b);

    bool bernoulli(double p);

    /// Unbiased uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  private:
    void refill();

    std::array<std::uint64_t, 4> ctr_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> buf_{};
    int buf_pos_ = 4; // empty
};

/// Deterministically derives a new seed from (seed, tag). Used to give the
/// two ray-tracing modes of a comparison independent placement streams while
/// keeping the whole comparison reproducible from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

} // namespace qdrt
