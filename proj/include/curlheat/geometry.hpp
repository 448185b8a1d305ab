#pragma once

#include <functional>
#include <memory>
#include <string>

#include "curlheat/diffops.hpp"
#include "curlheat/field.hpp"
#include "curlheat/vec.hpp"

namespace curlheat {

/// Boundary surface piece in principal-curvature coordinates: rho(y1,y2)
/// parametrizes the surface, the y-curves follow the lines of curvature
/// (so rho_1 . rho_2 = 0), kappa gives the principal curvatures and
/// metric the diagonal first fundamental form (g11, g22).
struct SurfacePatch {
    std::function<Vec3(double, double)> rho;
    std::function<Vec2(double, double)> kappa;
    std::function<Vec2(double, double)> metric;
    std::array<double, 2> y1_range{0.0, 1.0};
    std::array<double, 2> y2_range{0.0, 1.0};
};

SurfacePatch flat_patch();
/// Sphere of given radius, parametrized (azimuth, polar) away from the
/// poles so that rho_1 x rho_2 points inward. kappa = 1/radius (umbilic).
SurfacePatch sphere_patch(double radius);
/// Cylinder of given radius along the z-axis; y1 is the (clockwise) angular
/// arclength direction (kappa1 = 1/radius), y2 axial (kappa2 = 0).
SurfacePatch cylinder_patch(double radius);
/// "flat" | "sphere" | "cylinder" (radius used by the curved ones).
SurfacePatch make_patch(const std::string& type, double radius = 1.0);

/// Boundary-fitted chart x = F(y,z) = rho(y) + z n(y) with n the inward
/// unit normal. Metric factors G_jj(y,z) = g_jj(y) (1 - kappa_j(y) z)^2,
/// G_33 = 1, cross terms zero. Construction caches sqrt(G_jj) and its
/// partials on the chart grid; y-derivatives of the user closures are taken
/// by central differences with step 1e-6 of the domain width.
class Chart {
public:
    Chart(SurfacePatch patch, double depth, int n1, int n2, int nz);

    const GridSpec& grid() const { return grid_; }
    const SurfacePatch& patch() const { return patch_; }
    double depth() const { return depth_; }

    // sqrt(G_11), sqrt(G_22) and their partials (axis 0,1,2 = y1,y2,z).
    const ScalarField& sqrtG11() const { return A_; }
    const ScalarField& sqrtG22() const { return B_; }
    const ScalarField& d_sqrtG11(int axis) const { return dA_[axis]; }
    const ScalarField& d_sqrtG22(int axis) const { return dB_[axis]; }

    Vec3 position(int i, int j, int k) const;      // F at a grid node
    Vec3 frame(int axis, int i, int j) const;      // E_1, E_2, E_3 (z-free)
    Vec3 dF(int axis, int i, int j, int k) const;  // tangent/normal columns

    double kappa1(int i, int j) const { return kap_[0](i, j); }
    double kappa2(int i, int j) const { return kap_[1](i, j); }
    /// H(y,z) = d_z sqrt(G) / sqrt(G).
    double robin_h(int i, int j, double z) const;

private:
    SurfacePatch patch_;
    double depth_;
    GridSpec grid_;
    ScalarField A_, B_;
    std::array<ScalarField, 3> dA_, dB_;
    std::array<SurfaceField, 2> kap_;
    std::vector<Vec3> rho_nodes_, normal_, e1_, e2_;
    std::size_t sidx(int i, int j) const {
        return static_cast<std::size_t>(i) + grid_.nx() * static_cast<std::size_t>(j);
    }
    void validate() const;
};

std::shared_ptr<const Chart> build_chart(const SurfacePatch& patch,
                                         double depth, int n1, int n2, int nz);
inline std::shared_ptr<const Chart> build_chart(const SurfacePatch& patch,
                                                double depth, int n) {
    return build_chart(patch, depth, n, n, n);
}

/// Vector field on a chart, stored both as covariant-weighted components
/// b_j = B . d_jF and frame components Btilde_j = b_j / sqrt(G_jj).
struct CurvilinearVectorField {
    std::shared_ptr<const Chart> chart;
    std::array<ScalarField, 3> b;
    std::array<ScalarField, 3> frame;

    static CurvilinearVectorField from_frame(std::shared_ptr<const Chart> chart,
                                             std::array<ScalarField, 3> frame);
    /// Max relative defect of Btilde_j sqrt(G_jj) = b_j.
    double weight_defect() const;
};

CurvilinearVectorField pushforward(
    const std::function<Vec3(double, double, double)>& cartesian_field,
    std::shared_ptr<const Chart> chart);

/// Sum Btilde_j E_j at every node, as Cartesian components on the chart grid.
VectorField reconstruct(const CurvilinearVectorField& u);

ScalarField div_curvilinear(const CurvilinearVectorField& u,
                            const StencilPolicy& pol = {});

CurvilinearVectorField curl_curvilinear(const CurvilinearVectorField& u,
                                        const StencilPolicy& pol = {});

/// curl^2 via the verbatim nested-derivative expansions of T_j.
CurvilinearVectorField curlcurl_curvilinear(const CurvilinearVectorField& u,
                                            const StencilPolicy& pol = {});

/// First-order remainders phi_j of the T_j reductions and the
/// divergence-identity rearrangement terms zeta_j. The *_printed variants
/// keep the index slips as printed (phi2 third bracket, phi3 third bracket,
/// zeta3 second coefficient); the plain ones follow the derivation.
struct LowerOrderTerms {
    std::array<ScalarField, 3> phi, zeta;
    std::array<ScalarField, 3> phi_printed, zeta_printed;
};

LowerOrderTerms lower_order_terms(const CurvilinearVectorField& u,
                                  const StencilPolicy& pol = {},
                                  double div_tol_factor = 100.0);

/// The three routes to curl^2 frame components: the nested direct form, the
/// principal-plus-mixed form with phi, and (div-free fields only) the pure
/// principal form with zeta + phi substituted.
struct TTildeForms {
    std::array<ScalarField, 3> direct;
    std::array<ScalarField, 3> phi_form;
    std::array<ScalarField, 3> principal_form;
    std::array<ScalarField, 3> phi_form_printed;
    std::array<ScalarField, 3> principal_form_printed;
};

TTildeForms ttilde_forms(const CurvilinearVectorField& u,
                         const StencilPolicy& pol = {},
                         double div_tol_factor = 100.0);

/// H on Sigma (z=0). Equals -(kappa1+kappa2); asserted internally to 1e-10.
SurfaceField robin_coefficient(const Chart& chart);

/// u3_hat = exp(int_0^z H) u3 with composite-trapezoid quadrature in z;
/// turns the Robin condition d3 u3 + H u3 = 0 into a Neumann one.
ScalarField exp_gauge(const ScalarField& u3, const Chart& chart);

}  // namespace curlheat
