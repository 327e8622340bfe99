#pragma once

#include <cstdint>
#include <string>

#include "kato/dynamics/stream.hpp"
#include "kato/fields/grid.hpp"

namespace kato {

enum class IcKind { zero, smooth, rough, mollified };

IcKind parse_ic_kind(const std::string& s);
std::string to_string(IcKind k);

struct IcSpec {
    IcKind kind = IcKind::smooth;
    double amplitude = 1.0;
    /// spectral decay exponent of the rough field, coefficients ~ |k|^-(s+1)
    double s = 1.2;
    /// mollification scale 1/m
    double m = 8.0;
    std::uint64_t seed = 0;
};

/// Stream function of the initial datum, truncated to what the grid resolves.
/// rough and mollified share coefficients for equal seeds, on every grid.
StreamFunction make_initial_stream(const IcSpec& spec, const Grid& grid);

/// u0 = rot_h(psi0): discretely divergence-free with zero wall-normal velocity.
VelocityField make_initial_condition(const IcSpec& spec, const Grid& grid);

}  // namespace kato
