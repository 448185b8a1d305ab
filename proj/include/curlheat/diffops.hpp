#pragma once

#include "curlheat/stencil.hpp"

namespace curlheat {

VectorField grad(const ScalarField& s, const StencilPolicy& pol = {},
                 const Mask* mask = nullptr);

ScalarField div(const VectorField& u, const StencilPolicy& pol = {},
                const Mask* mask = nullptr);

VectorField curl(const VectorField& u, const StencilPolicy& pol = {},
                 const Mask* mask = nullptr);

/// Composed per-axis second derivatives, so curl_curl == grad(div) -
/// laplacian holds in exact arithmetic (the per-axis first-derivative
/// operators commute and compose).
ScalarField laplacian(const ScalarField& s, const StencilPolicy& pol = {},
                      const Mask* mask = nullptr);
VectorField laplacian(const VectorField& u, const StencilPolicy& pol = {},
                      const Mask* mask = nullptr);

/// curl(curl(u)) by composition of the shared curl kernel.
VectorField curl_curl(const VectorField& u, const StencilPolicy& pol = {},
                      const Mask* mask = nullptr);

/// h = B * (curl u), pointwise matrix-vector product.
VectorField apply_matrix_curl(const MatrixField& B, const VectorField& u,
                              const StencilPolicy& pol = {},
                              const Mask* mask = nullptr);

}  // namespace curlheat
