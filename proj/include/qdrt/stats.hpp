// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/rng.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace qdrt {

enum class DistFamily { logistic, weibull, lognormal };

const char* to_string(DistFamily family);

/// Fitted distribution. Parameter meaning by family:
///   logistic:  params = {location mu, scale s}
///   weibull:   params = {scale A, shape B}
///   lognormal: params = {mu, sigma of the log}
struct FitResult {
    DistFamily family = DistFamily::logistic;
    double params[2] = {0.0, 0.0};
    double log_likelihood = 0.0;
    std::size_t sample_count = 0;
    bool degenerate = false;
};

/// Minimum sample count accepted by the fitters.
inline constexpr std::size_t kMinFitSamples = 8;

/// Maximum-likelihood logistic fit via Newton iteration, moment-initialized
/// (mu0 = mean, s0 = sqrt(3) std / pi). Converges to gradient norm < 1e-8.
/// Throws std::invalid_argument for bad input (fewer than kMinFitSamples
/// values, non-finite values, constant sample) and std::runtime_error after
/// 200 iterations without convergence (message carries the last iterate).
FitResult fit_logistic(std::span<const double> samples);

/// Maximum-likelihood Weibull fit: shape by Newton on the profile
/// likelihood, scale in closed form given the shape. All samples must be
/// positive. Errors as fit_logistic.
FitResult fit_weibull(std::span<const double> samples);

/// Exact lognormal MLE: mu and sigma are the mean and standard deviation of
/// the log-samples. A zero sigma is flagged degenerate, not an error.
FitResult fit_lognormal(std::span<const double> samples);

/// Two-sample Cramer-von Mises outcome.
struct GofResult {
    double statistic = 0.0;    // Anderson's T from pooled ranks
    double p_value = 0.0;      // permutation tail proportion
    double p_asymptotic = 0.0; // limiting-distribution approximation
    int n_permutations = 0;
    double alpha = 0.0;
    bool passed = false; // p_value > alpha
};

/// Rank statistic alone (average ranks on ties).
double cvm_statistic(std::span<const double> x, std::span<const double> y);

/// Two-sample Cramer-von Mises test with a permutation p-value. Permutation
/// p uses substreams (seed, permutation, index): reproducible bit-exactly for
/// any worker count. Requires at least 8 values per side.
GofResult cvm_two_sample(std::span<const double> x, std::span<const double> y,
                         int n_permutations, std::uint64_t seed, double alpha,
                         unsigned threads = 0);

/// CDF of the limiting distribution of the two-sample statistic.
double cvm_limiting_cdf(double t);

// Reference samplers for the fitted families (inverse-CDF / Box-Muller).
double sample_logistic(PhiloxRng& rng, double location, double scale);
double sample_weibull(PhiloxRng& rng, double scale_a, double shape_b);
double sample_lognormal(PhiloxRng& rng, double log_mu, double log_sigma);
double sample_normal(PhiloxRng& rng);

} // namespace qdrt
