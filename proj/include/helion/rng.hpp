#ifndef HELION_RNG_HPP
#define HELION_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>

namespace helion {

// Identifier recorded in output metadata so runs can be reproduced later.
inline constexpr std::string_view kGeneratorId = "xoshiro256++/splitmix64-substreams-v1";

namespace detail {

// splitmix64 output function (Steele, Lea, Flood).
inline std::uint64_t avalanche64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic pseudo-random stream: xoshiro256++ (Blackman & Vigna),
// state filled by splitmix64.  Substreams are addressed as (seed, stream):
// the splitmix64 seeder is keyed with avalanche64(avalanche64(seed) + stream),
// so every (seed, stream) pair yields an independent, reproducible sequence.
// Modules document which stream index they assign to which unit of work.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t key = detail::avalanche64(detail::avalanche64(seed) + stream);
        for (auto& word : state_) {
            key += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = key;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Pair of independent standard normals via Box-Muller.  Consumes exactly
    // two 64-bit draws, so the stream layout is easy to reason about.
    std::pair<double, double> next_gaussian_pair() {
        // u1 in (0, 1] keeps the log finite.
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * kPi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    double next_gaussian() { return next_gaussian_pair().first; }

    // Circular complex Gaussian with variance 1/2 per quadrature (unit
    // mean-square magnitude), the single-speckle-mode statistic.
    std::complex<double> next_unit_circular_gaussian() {
        const auto [g1, g2] = next_gaussian_pair();
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        return {g1 * inv_sqrt2, g2 * inv_sqrt2};
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace helion

#endif
