#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace lprx {

// Deterministic 64-bit generator used for every random quantity in the
// project: xoshiro256++ state seeded through splitmix64. Streams for
// independent components are derived from a single master seed by mixing a
// textual tag and integer indices through splitmix64 (see derive_seed), so
// any trial can be reproduced in isolation.
//
// gaussian() is the polar-free Box-Muller transform with the second variate
// cached; uniform01() maps the top 53 bits to (0,1] so the logarithm is
// always finite.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform in (0,1], 53-bit resolution.
    double uniform01();
    // Uniform integer in [0, bound), unbiased via rejection. bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);
    // Standard normal.
    double gaussian();

  private:
    std::array<std::uint64_t, 4> state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

// splitmix64 step; advances the state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives a child seed from (master, tag, indices): the tag is FNV-1a hashed,
// then tag hash and each index are absorbed with one splitmix64 step apiece.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {});

Rng derive_rng(std::uint64_t master, std::string_view tag,
               std::initializer_list<std::uint64_t> indices = {});

}  // namespace lprx
