#pragma once

// Counter-based generation: every random number is a pure function of
// (key, counter), so paths can be produced in any order and on any thread.

#include <array>
#include <cstdint>

namespace kato {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    Counter operator()(Counter ctr) const;

private:
    Key key_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Mixes several 64-bit words into one seed.
std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

/// Uniform in (0, 1) from 53 random bits.
double to_unit(std::uint64_t bits);

/// One standard normal per counter (Box-Muller on the two 64-bit halves).
double normal_at(const Philox4x32& gen, const Philox4x32::Counter& ctr);

}  // namespace kato
