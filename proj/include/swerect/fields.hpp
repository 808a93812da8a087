#pragma once

#include <cstddef>

#include "swerect/boundary.hpp"
#include "swerect/grid.hpp"
#include "swerect/rng.hpp"

namespace swerect {

// Lowest floor(min(nx, ny) / 4) cosine modes per direction, at least 1.
std::size_t default_probe_modes(const Grid& grid);

// Sum over a, b < modes of A_ab cos(a pi x / L1) cos(b pi y / L2) per component,
// amplitudes uniform in [-1, 1].
StateField band_limited_field(const Grid& grid, std::size_t modes, SplitMix64& rng);

// Smooth vector function with a few random low trigonometric modes.
PointFunction random_smooth_function(SplitMix64& rng, double L1, double L2, std::size_t modes = 3);

// Smooth field whose boundary values lie in each side's constraint null space:
//   y(L2-y)[(1-x/L1) N_W g1 + (x/L1) N_E g1] + x(L1-x)[(1-y/L2) N_S g2 + (y/L2) N_N g2]
//   + x(L1-x) y(L2-y) g3
// where N_s is the S0-orthogonal projector for side s.
StateField compatible_field(const Grid& grid, const BoundarySpec& spec, const PhysicalConstants& p,
                            const PointFunction& g1, const PointFunction& g2, const PointFunction& g3);

}  // namespace swerect
