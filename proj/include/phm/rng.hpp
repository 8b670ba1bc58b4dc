#pragma once

#include <cstdint>
#include <random>

namespace phm {

using Rng = std::mt19937_64;

/// Independent generator for sample `stream` of a run seeded with `seed`.
/// The result depends only on (seed, stream), never on scheduling.
Rng substream(std::uint64_t seed, std::uint64_t stream);

/// Mixes two 64-bit values into a derived seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace phm
