#pragma once

#include "curlheat/field.hpp"

namespace curlheat {

/// Shared finite-difference policy: centered second-order stencils in the
/// interior, one-sided second-order at grid faces. A single policy instance
/// must back every operator inside one computation so the discrete identity
/// tests (mixed-partial commutation) hold.
struct StencilPolicy {
    bool use_onesided_at_mask_edge = true;
};

/// First derivative along axis (0=x, 1=y, 2=z). With a mask, nodes outside
/// it get 0 and stencils at mask edges fall back to one-sided pointing into
/// the mask (or 0 when fewer than three consecutive in-mask nodes exist).
ScalarField d_axis(const ScalarField& f, int axis, const StencilPolicy& pol,
                   const Mask* mask = nullptr);

/// Second derivative along axis as the composition d_axis(d_axis(f)).
ScalarField d2_axis(const ScalarField& f, int axis, const StencilPolicy& pol,
                    const Mask* mask = nullptr);

}  // namespace curlheat
