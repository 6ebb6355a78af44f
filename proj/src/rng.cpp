// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#include "qdrt/rng.hpp"

#include <stdexcept>

namespace qdrt {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

// Fixed second key word; distinguishes this project's streams from a
// generator keyed with (seed, 0).
constexpr std::uint64_t kKeyTweak = 0x7164727476310000ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo)
{
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace

std::array<std::uint64_t, 4> PhiloxRng::block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key)
{
    std::array<std::uint64_t, 4> x = counter;
    std::uint64_t k0 = key[0];
    std::uint64_t k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint64_t hi0;
        std::uint64_t lo0;
        std::uint64_t hi1;
        std::uint64_t lo1;
        mulhilo(kMul0, x[0], hi0, lo0);
        mulhilo(kMul1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    }
    return x;
}

PhiloxRng::PhiloxRng(std::uint64_t seed, Stream purpose, std::uint64_t index,
                     std::uint64_t subindex)
    : ctr_{0, index, subindex, static_cast<std::uint64_t>(purpose)},
      key_{seed, kKeyTweak}
{
}

void PhiloxRng::refill()
{
    buf_ = block(ctr_, key_);
    ++ctr_[0]; // position; 2^64 blocks per substream, never wraps in practice
    buf_pos_ = 0;
}

std::uint64_t PhiloxRng::operator()()
{
    if (buf_pos_ >= 4)
        refill();
    return buf_[buf_pos_++];
}

double PhiloxRng::uniform01()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double PhiloxRng::uniform(double a, double b)
{
    return a + (b - a) * uniform01();
}

bool PhiloxRng::bernoulli(double p)
{
    return uniform01() < p;
}

std::uint64_t PhiloxRng::below(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("PhiloxRng::below: n must be >= 1");
    if ((n & (n - 1)) == 0)
        return (*this)() & (n - 1);
    // rejection sampling on the top of the range keeps the draw unbiased
    std::uint64_t limit = max() - max() % n;
    std::uint64_t v = (*this)();
    while (v >= limit)
        v = (*this)();
    return v % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag)
{
    return PhiloxRng::block({0, tag, 0, static_cast<std::uint64_t>(Stream::derive)},
                            {seed, kKeyTweak})[0];
}

} // namespace qdrt
