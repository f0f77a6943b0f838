#ifndef GIPULSE_RNG_HPP
#define GIPULSE_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace gipulse {

/// SplitMix64 finalizer. Used as the stated hash for deriving independent
/// per-trial and per-role seeds from a master seed, so parallel execution
/// cannot change any drawn value.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// seed = mix64(mix64(master ^ mix64(a+1)) ^ mix64(b+1))
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(master ^ mix64(a + 1)) ^ mix64(b + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

/// n iid N(0,1) draws, a pure function of (n, seed).
inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = gauss(eng);
    return out;
}

} // namespace gipulse

#endif
