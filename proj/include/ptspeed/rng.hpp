#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ptspeed/types.hpp"

namespace ptspeed::rng {

/* splitmix64 finalizer; bijective on 64-bit words */
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/* Seed for the k-th independent substream of a master seed.  Trajectories,
   sweep points and generator cases each get their own stream so results do
   not depend on execution order. */
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
    return mix64(mix64(seed) + 0x9E3779B97F4A7C15ULL * (k + 1));
}

/* mt19937_64 with fixed bit-to-double conversion.  The standard pins the
   engine's output sequence, so draws are bit-reproducible across platforms;
   std::uniform_real_distribution is not, hence the manual conversions. */
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    /* uniform in [0, 1) */
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /* uniform in (0, 1]; safe under log() */
    double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    /* standard normal via Box-Muller (cosine branch only, stateless) */
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace ptspeed::rng
