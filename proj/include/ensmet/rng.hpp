#pragma once

#include <cstdint>

namespace ensmet {

// Counter-based deterministic random streams built on splitmix64.
//
// Every draw is a pure function of (seed, a, b, c), so generated tables are
// reproducible across runs and platforms and independent of evaluation
// order. Stream channels used by the library:
//
//   synth_system   a = instance, b = channel, c = model (or 0)
//                  channel 0: truth draw
//                  channel 1: shared-corruption indicator
//                  channel 2: shared error budget
//                  channel 3: shared wrong-label draw
//                  channel 4: per-model error budget
//                  channel 5: per-model wrong-label draw
//   make_fold_plan a = shuffle step, b = 0, c = 0
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double stream_unit(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
    return static_cast<double>(stream_u64(seed, a, b, c) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) via 128-bit multiply-shift.
inline std::uint64_t stream_below(std::uint64_t n, std::uint64_t seed,
                                  std::uint64_t a, std::uint64_t b = 0,
                                  std::uint64_t c = 0) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(stream_u64(seed, a, b, c)) * n;
    return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace ensmet
