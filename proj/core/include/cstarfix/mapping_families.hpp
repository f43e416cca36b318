#pragma once

#include "cstarfix/fixpoint.hpp"

namespace cstarfix {

/// Named scalar mapping families used by demos and solver configs.

Mapping make_identity();

/// x -> alpha * x + beta
Mapping make_affine(double alpha, double beta);

/// x -> factor * x away from the origin, with a jump at zero:
/// 0 -> at_zero. The jump makes the map discontinuous at 0 whenever
/// at_zero != 0, which is what the non-convergence demos rely on.
Mapping make_scale_except_zero(double factor, double at_zero);

/// Right inverse of the scaling part of make_scale_except_zero:
/// y -> y / factor for y != 0, and 0 -> 0. Not a section at y == 0 when the
/// forward map jumps there; callers sample sections away from the jump.
Mapping make_scale_except_zero_section(double factor);

/// x -> 3 - x on [0, 3/2], constant 3 above. Discontinuous at 3/2.
Mapping make_reflect_plateau();

/// x -> 2x on (1, 2], identity elsewhere. Discontinuous at 1.
Mapping make_band_double();

/// f composed with itself `times` times (times >= 0; 0 gives the identity).
Mapping compose_power(Mapping f, int times);

}  // namespace cstarfix
