#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qreduce {

/// Seed derivation. A single 64-bit root seed is split into independent
/// module streams by hashing the stream name (FNV-1a) into the root and
/// finalizing with splitmix64. Streams never share state, so adding a new
/// consumer does not perturb existing outputs.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t root, std::string_view stream) {
    return Rng(derive_seed(root, stream));
}

/// Uniform integer in [0, bound). Rejection sampling keeps the result
/// identical across standard libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

}  // namespace qreduce
