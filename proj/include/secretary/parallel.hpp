#pragma once

#include <cstdint>
#include <random>

namespace secretary {

// Monte Carlo work is cut into fixed-size chunks, each with its own generator,
// so a result depends on (seed, n_samples) and never on the thread count.
inline constexpr std::uint64_t kChunkSize = 4096;

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk);

// 0 leaves the OpenMP default alone.
void set_threads(int n);
int max_threads();

}  // namespace secretary
