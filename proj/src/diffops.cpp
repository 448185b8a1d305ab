#include "curlheat/diffops.hpp"

namespace curlheat {

VectorField grad(const ScalarField& s, const StencilPolicy& pol,
                 const Mask* mask) {
    return VectorField(d_axis(s, 0, pol, mask), d_axis(s, 1, pol, mask),
                       d_axis(s, 2, pol, mask));
}

ScalarField div(const VectorField& u, const StencilPolicy& pol,
                const Mask* mask) {
    return d_axis(u.comp(0), 0, pol, mask) + d_axis(u.comp(1), 1, pol, mask) +
           d_axis(u.comp(2), 2, pol, mask);
}

VectorField curl(const VectorField& u, const StencilPolicy& pol,
                 const Mask* mask) {
    return VectorField(
        d_axis(u.comp(2), 1, pol, mask) - d_axis(u.comp(1), 2, pol, mask),
        d_axis(u.comp(0), 2, pol, mask) - d_axis(u.comp(2), 0, pol, mask),
        d_axis(u.comp(1), 0, pol, mask) - d_axis(u.comp(0), 1, pol, mask));
}

ScalarField laplacian(const ScalarField& s, const StencilPolicy& pol,
                      const Mask* mask) {
    return d2_axis(s, 0, pol, mask) + d2_axis(s, 1, pol, mask) +
           d2_axis(s, 2, pol, mask);
}

VectorField laplacian(const VectorField& u, const StencilPolicy& pol,
                      const Mask* mask) {
    return VectorField(laplacian(u.comp(0), pol, mask),
                       laplacian(u.comp(1), pol, mask),
                       laplacian(u.comp(2), pol, mask));
}

VectorField curl_curl(const VectorField& u, const StencilPolicy& pol,
                      const Mask* mask) {
    return curl(curl(u, pol, mask), pol, mask);
}

VectorField apply_matrix_curl(const MatrixField& B, const VectorField& u,
                              const StencilPolicy& pol, const Mask* mask) {
    if (!(B.grid() == u.grid()))
        throw std::invalid_argument("apply_matrix_curl: grids differ");
    VectorField c = curl(u, pol, mask);
    VectorField h(u.grid());
    const GridSpec& g = u.grid();
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                Vec3 hv = matvec(B.at(i, j, k), c.at(i, j, k));
                for (int cidx = 0; cidx < 3; ++cidx)
                    h.comp(cidx)(i, j, k) = hv[cidx];
            }
    return h;
}

}  // namespace curlheat
