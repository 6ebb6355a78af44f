// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/stats.hpp"

#include "qdrt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qdrt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_samples(std::span<const double> samples, bool positive, const char* who)
{
    if (samples.size() < kMinFitSamples)
        throw std::invalid_argument(std::string(who) + ": needs at least 8 samples");
    for (double v : samples) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": non-finite sample");
        if (positive && v <= 0.0)
            throw std::invalid_argument(std::string(who) + ": samples must be > 0");
    }
}

double mean_of(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(std::span<const double> v, double mean)
{
    double acc = 0.0;
    for (double x : v)
        acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

// strictly-open uniform (0, 1); safe under log()
double u01_open(PhiloxRng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

const char* to_string(DistFamily family)
{
    switch (family) {
    case DistFamily::logistic: return "logistic";
    case DistFamily::weibull: return "weibull";
    default: return "lognormal";
    }
}

FitResult fit_logistic(std::span<const double> samples)
{
    check_samples(samples, false, "fit_logistic");
    double n = static_cast<double>(samples.size());
    double mu = mean_of(samples);
    double sd = stddev_of(samples, mu);
    if (sd == 0.0)
        throw std::invalid_argument("fit_logistic: zero scale (constant sample)");
    double s = std::sqrt(3.0) * sd / kPi;

    auto loglik = [&](double m, double sc) {
        double acc = 0.0;
        for (double x : samples) {
            double z = (x - m) / sc;
            acc += -z - std::log(sc) - 2.0 * std::log1p(std::exp(-z));
        }
        return acc;
    };

    // Newton in (mu, log s); the logistic log-likelihood is smooth and
    // unimodal, step halving keeps the iteration monotone.
    double ll = loglik(mu, s);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        double g_mu = 0.0;
        double g_eta = 0.0;
        double h_mm = 0.0;
        double h_me = 0.0;
        double h_ee = 0.0;
        for (double x : samples) {
            double z = (x - mu) / s;
            double t = std::tanh(0.5 * z);
            double sech2 = 1.0 - t * t;
            g_mu += t / s;
            g_eta += z * t - 1.0;
            h_mm += -0.5 * sech2 / (s * s);
            h_me += -(t + 0.5 * z * sech2) / s;
            h_ee += -z * t - 0.5 * z * z * sech2;
        }
        double gnorm = std::max(std::abs(g_mu) * s, std::abs(g_eta));
        if (gnorm < 1e-8) {
            converged = true;
            break;
        }
        double det = h_mm * h_ee - h_me * h_me;
        double d_mu;
        double d_eta;
        if (det == 0.0 || !std::isfinite(det)) {
            d_mu = g_mu * s * s / n; // gradient fallback
            d_eta = g_eta / n;
        } else {
            d_mu = -(h_ee * g_mu - h_me * g_eta) / det;
            d_eta = -(-h_me * g_mu + h_mm * g_eta) / det;
        }
        double step = 1.0;
        for (int halving = 0; halving < 40; ++halving) {
            double mu_new = mu + step * d_mu;
            double s_new = s * std::exp(step * d_eta);
            double ll_new = loglik(mu_new, s_new);
            if (ll_new >= ll - 1e-12 * std::abs(ll)) {
                mu = mu_new;
                s = s_new;
                ll = ll_new;
                break;
            }
            step *= 0.5;
        }
    }
    if (!converged)
        throw std::runtime_error("fit_logistic: no convergence after 200 iterations (last mu=" +
                                 std::to_string(mu) + ", s=" + std::to_string(s) + ")");

    FitResult fit;
    fit.family = DistFamily::logistic;
    fit.params[0] = mu;
    fit.params[1] = s;
    fit.log_likelihood = ll;
    fit.sample_count = samples.size();
    return fit;
}

FitResult fit_weibull(std::span<const double> samples)
{
    check_samples(samples, true, "fit_weibull");
    double n = static_cast<double>(samples.size());

    std::vector<double> logs(samples.size());
    std::transform(samples.begin(), samples.end(), logs.begin(),
                   [](double x) { return std::log(x); });
    double lmean = mean_of(logs);
    double lsd = stddev_of(logs, lmean);
    if (lsd == 0.0)
        throw std::runtime_error("fit_weibull: no convergence (degenerate constant sample)");
    double lmax = *std::max_element(logs.begin(), logs.end());

    // profile equation g(B) = 1/B + mean(log x) - sum(x^B log x)/sum(x^B);
    // g is strictly decreasing, so Newton with a bisection guard is safe
    auto weighted = [&](double b, double& s0, double& s1, double& s2) {
        s0 = s1 = s2 = 0.0;
        for (double u : logs) {
            double w = std::exp(b * (u - lmax)); // shift keeps exp in range
            s0 += w;
            s1 += u * w;
            s2 += u * u * w;
        }
    };
    auto g_of = [&](double b) {
        double s0;
        double s1;
        double s2;
        weighted(b, s0, s1, s2);
        return 1.0 / b + lmean - s1 / s0;
    };

    double b = 1.2826 / lsd; // pi / (sqrt(6) sd of logs)
    double lo = 1e-12;
    double hi = b;
    while (g_of(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("fit_weibull: no convergence (shape diverges)");
    }

    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        double s0;
        double s1;
        double s2;
        weighted(b, s0, s1, s2);
        double g = 1.0 / b + lmean - s1 / s0;
        if (std::abs(g) < 1e-12) {
            converged = true;
            break;
        }
        (g > 0.0 ? lo : hi) = b;
        double gp = -1.0 / (b * b) - (s2 * s0 - s1 * s1) / (s0 * s0);
        double b_new = b - g / gp;
        if (!(b_new > lo && b_new < hi))
            b_new = 0.5 * (lo + hi);
        if (std::abs(b_new - b) < 1e-14 * b) {
            b = b_new;
            converged = true;
            break;
        }
        b = b_new;
    }
    if (!converged)
        throw std::runtime_error("fit_weibull: no convergence after 200 iterations (last B=" +
                                 std::to_string(b) + ")");

    double s0;
    double s1;
    double s2;
    weighted(b, s0, s1, s2);
    double a = std::exp(lmax + std::log(s0 / n) / b);

    FitResult fit;
    fit.family = DistFamily::weibull;
    fit.params[0] = a;
    fit.params[1] = b;
    // at the MLE, sum((x/A)^B) = n
    fit.log_likelihood = n * std::log(b) - n * b * std::log(a) +
                         (b - 1.0) * std::accumulate(logs.begin(), logs.end(), 0.0) - n;
    fit.sample_count = samples.size();
    return fit;
}

FitResult fit_lognormal(std::span<const double> samples)
{
    check_samples(samples, true, "fit_lognormal");
    double n = static_cast<double>(samples.size());

    std::vector<double> logs(samples.size());
    std::transform(samples.begin(), samples.end(), logs.begin(),
                   [](double x) { return std::log(x); });
    double mu = mean_of(logs);
    double sigma = stddev_of(logs, mu);

    FitResult fit;
    fit.family = DistFamily::lognormal;
    fit.params[0] = mu;
    fit.params[1] = sigma;
    fit.sample_count = samples.size();
    if (sigma == 0.0) {
        fit.degenerate = true;
        fit.log_likelihood = std::numeric_limits<double>::infinity();
        return fit;
    }
    fit.log_likelihood = -std::accumulate(logs.begin(), logs.end(), 0.0) -
                         n * std::log(sigma * std::sqrt(2.0 * kPi)) - 0.5 * n;
    return fit;
}

namespace {

// pooled sorted values with average ranks; rank[i] belongs to sorted slot i
struct PooledRanks {
    std::vector<double> rank;    // average rank (1-based) of each sorted slot
    std::vector<char> is_x;      // label of each sorted slot for the observed split
    std::size_t n_x = 0;
    std::size_t n_y = 0;
};

PooledRanks pool_and_rank(std::span<const double> x, std::span<const double> y)
{
    PooledRanks pr;
    pr.n_x = x.size();
    pr.n_y = y.size();
    std::size_t total = x.size() + y.size();

    std::vector<std::pair<double, char>> v;
    v.reserve(total);
    for (double xi : x)
        v.emplace_back(xi, 1);
    for (double yi : y)
        v.emplace_back(yi, 0);
    std::stable_sort(v.begin(), v.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    pr.rank.resize(total);
    pr.is_x.resize(total);
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i;
        while (j + 1 < total && v[j + 1].first == v[i].first)
            ++j;
        double avg = 0.5 * static_cast<double>(i + 1 + j + 1); // 1-based average rank
        for (std::size_t k = i; k <= j; ++k)
            pr.rank[k] = avg;
        i = j + 1;
    }
    for (std::size_t k = 0; k < total; ++k)
        pr.is_x[k] = v[k].second;
    return pr;
}

// Anderson's two-sample statistic from a label assignment over sorted slots.
double statistic_from_labels(const PooledRanks& pr, const std::vector<char>& is_x)
{
    double n = static_cast<double>(pr.n_x);
    double m = static_cast<double>(pr.n_y);
    double u = 0.0;
    std::size_t ix = 0;
    std::size_t iy = 0;
    for (std::size_t slot = 0; slot < pr.rank.size(); ++slot) {
        if (is_x[slot]) {
            ++ix;
            double d = pr.rank[slot] - static_cast<double>(ix);
            u += n * d * d;
        } else {
            ++iy;
            double d = pr.rank[slot] - static_cast<double>(iy);
            u += m * d * d;
        }
    }
    return u / (n * m * (n + m)) - (4.0 * n * m - 1.0) / (6.0 * (n + m));
}

} // namespace

double cvm_statistic(std::span<const double> x, std::span<const double> y)
{
    if (x.size() < 1 || y.size() < 1)
        throw std::invalid_argument("cvm_statistic: empty sample");
    PooledRanks pr = pool_and_rank(x, y);
    return statistic_from_labels(pr, pr.is_x);
}

GofResult cvm_two_sample(std::span<const double> x, std::span<const double> y,
                         int n_permutations, std::uint64_t seed, double alpha, unsigned threads)
{
    if (x.size() < 8 || y.size() < 8)
        throw std::invalid_argument("cvm_two_sample: needs at least 8 samples per side");
    if (n_permutations < 1)
        throw std::invalid_argument("cvm_two_sample: needs at least 1 permutation");

    PooledRanks pr = pool_and_rank(x, y);
    double t_obs = statistic_from_labels(pr, pr.is_x);

    std::size_t total = x.size() + y.size();
    std::vector<char> exceed(static_cast<std::size_t>(n_permutations), 0);

    parallel_for(static_cast<std::size_t>(n_permutations), threads, [&](std::size_t p) {
        PhiloxRng rng(seed, Stream::permutation, p);
        // draw an n_x-subset of slots by partial Fisher-Yates
        std::vector<std::uint32_t> idx(total);
        std::iota(idx.begin(), idx.end(), 0u);
        std::vector<char> labels(total, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
            std::swap(idx[i], idx[j]);
            labels[idx[i]] = 1;
        }
        double t = statistic_from_labels(pr, labels);
        exceed[p] = (t >= t_obs - 1e-12) ? 1 : 0;
    });

    std::size_t count = static_cast<std::size_t>(
        std::count(exceed.begin(), exceed.end(), static_cast<char>(1)));

    GofResult out;
    out.statistic = t_obs;
    out.p_value = (1.0 + static_cast<double>(count)) / (static_cast<double>(n_permutations) + 1.0);
    out.p_asymptotic = 1.0 - cvm_limiting_cdf(t_obs);
    out.n_permutations = n_permutations;
    out.alpha = alpha;
    out.passed = out.p_value > alpha;
    return out;
}

double cvm_limiting_cdf(double t)
{
    if (t <= 0.0)
        return 0.0;
    if (t > 100.0)
        return 1.0;
    // eigenexpansion of the limiting omega^2 distribution in terms of
    // modified Bessel K_{1/4}
    double sum = 0.0;
    double g = 1.0; // (2j)! / (4^j (j!)^2)
    for (int j = 0; j < 16; ++j) {
        double fourj1 = 4.0 * j + 1.0;
        double u = fourj1 * fourj1 / (16.0 * t);
        if (u < 650.0)
            sum += g * std::sqrt(fourj1) * std::exp(-u) * std::cyl_bessel_k(0.25, u);
        g *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
    }
    double cdf = sum / (kPi * std::sqrt(t));
    return std::clamp(cdf, 0.0, 1.0);
}

double sample_logistic(PhiloxRng& rng, double location, double scale)
{
    double u = u01_open(rng);
    return location + scale * std::log(u / (1.0 - u));
}

double sample_weibull(PhiloxRng& rng, double scale_a, double shape_b)
{
    double u = u01_open(rng);
    return scale_a * std::pow(-std::log(u), 1.0 / shape_b);
}

double sample_lognormal(PhiloxRng& rng, double log_mu, double log_sigma)
{
    return std::exp(log_mu + log_sigma * sample_normal(rng));
}

double sample_normal(PhiloxRng& rng)
{
    double u1 = u01_open(rng);
    double u2 = u01_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

} // namespace qdrt
