#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace csim {

// 64-bit FNV-1a, used to turn stream labels into seed material.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

// Derives independent, label-addressed RNG streams from one master seed.
// Adding a new subsystem stream never perturbs the draws of existing ones.
class SeedBank {
public:
    explicit SeedBank(std::uint64_t master_seed) : master_(master_seed) {}

    std::uint64_t master() const { return master_; }

    std::uint64_t seed_for(std::string_view label) const {
        return splitmix64(master_ ^ fnv1a64(label));
    }

    Rng stream(std::string_view label) const { return Rng(seed_for(label)); }

private:
    std::uint64_t master_;
};

}  // namespace csim
