#pragma once

#include <cstdint>
#include <random>

namespace ffsim {

// splitmix64 step; used to whiten seeds and to derive independent per-trial
// streams from (base_seed, trial_index) so parallel trials are reproducible
// independent of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

// Counter-based derivation: stream i of a base seed.
inline std::mt19937_64 make_trial_rng(std::uint64_t base_seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(base_seed) ^ (trial * 0xd1342543de82ef95ULL + 1)));
}

}  // namespace ffsim
