#include "curlheat/stencil.hpp"

#include <stdexcept>

namespace curlheat {

ScalarField d_axis(const ScalarField& f, int axis, const StencilPolicy& pol,
                   const Mask* mask) {
    const GridSpec& g = f.grid();
    if (axis < 0 || axis > 2) throw std::invalid_argument("d_axis: bad axis");
    if (mask && !(mask->grid() == g))
        throw std::invalid_argument("d_axis: mask grid mismatch");

    const int n[3] = {g.nx(), g.ny(), g.nz()};
    const std::ptrdiff_t stride[3] = {
        1, g.nx(), static_cast<std::ptrdiff_t>(g.nx()) * g.ny()};
    const double h[3] = {g.hx(), g.hy(), g.hz()};
    const double inv2h = 1.0 / (2.0 * h[axis]);
    const std::ptrdiff_t s = stride[axis];
    const int len = n[axis];

    ScalarField out(g);
    const std::vector<double>& v = f.values();
    std::vector<double>& w = out.values();

    for (int k = 0; k < n[2]; ++k)
        for (int j = 0; j < n[1]; ++j)
            for (int i = 0; i < n[0]; ++i) {
                const std::size_t idx = g.index(i, j, k);
                const int m = (axis == 0) ? i : (axis == 1) ? j : k;
                // in_mask(d): node at offset d along the axis, grid-range
                // checked by the caller through the m comparisons below.
                auto in_mask = [&](int d) {
                    if (!mask) return true;
                    int ii = i, jj = j, kk = k;
                    (axis == 0 ? ii : axis == 1 ? jj : kk) += d;
                    return mask->inside(ii, jj, kk);
                };
                if (mask && !in_mask(0)) {
                    w[idx] = 0.0;
                    continue;
                }
                const bool minus_ok = m > 0 && in_mask(-1);
                const bool plus_ok = m < len - 1 && in_mask(+1);
                const bool at_grid_face = (m == 0 || m == len - 1);
                const bool onesided_allowed =
                    at_grid_face || !mask || pol.use_onesided_at_mask_edge;
                if (minus_ok && plus_ok) {
                    w[idx] = (v[idx + s] - v[idx - s]) * inv2h;
                } else if (onesided_allowed && !minus_ok && m < len - 2 &&
                           plus_ok && in_mask(+2)) {
                    w[idx] = (-3.0 * v[idx] + 4.0 * v[idx + s] -
                              v[idx + 2 * s]) *
                             inv2h;
                } else if (onesided_allowed && !plus_ok && m > 1 && minus_ok &&
                           in_mask(-2)) {
                    w[idx] = (3.0 * v[idx] - 4.0 * v[idx - s] +
                              v[idx - 2 * s]) *
                             inv2h;
                } else {
                    // Fewer than three consecutive usable nodes: no
                    // second-order stencil exists; report 0.
                    w[idx] = 0.0;
                }
            }
    return out;
}

ScalarField d2_axis(const ScalarField& f, int axis, const StencilPolicy& pol,
                    const Mask* mask) {
    return d_axis(d_axis(f, axis, pol, mask), axis, pol, mask);
}

}  // namespace curlheat
