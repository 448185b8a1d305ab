#include "curlheat/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace curlheat {

namespace {

template <class F>
auto central(const F& f, double x, double h) -> decltype(f(x)) {
    auto p = f(x + h), m = f(x - h);
    if constexpr (std::is_same_v<decltype(p), double>) {
        return (p - m) / (2.0 * h);
    } else {
        decltype(p) out;
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] = (p[c] - m[c]) / (2.0 * h);
        return out;
    }
}

// Twice Richardson-extrapolated central difference (6th order). The frame
// and Jacobian checks need ~1e-12 accuracy, which the pinned 1e-6 step
// cannot reach once roundoff is divided by the step; a larger step with
// higher order keeps both truncation and roundoff near 1e-12.
template <class F>
auto rich6(const F& f, double x, double h) -> decltype(f(x)) {
    auto comb = [](const auto& a, const auto& b, double ca, double cb) {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, double>) {
            return ca * a + cb * b;
        } else {
            std::decay_t<decltype(a)> out;
            for (std::size_t c = 0; c < out.size(); ++c)
                out[c] = ca * a[c] + cb * b[c];
            return out;
        }
    };
    auto d1 = central(f, x, h), d2 = central(f, x, h / 2.0),
         d4 = central(f, x, h / 4.0);
    auto r1 = comb(d2, d1, 4.0 / 3.0, -1.0 / 3.0);
    auto r2 = comb(d4, d2, 4.0 / 3.0, -1.0 / 3.0);
    return comb(r2, r1, 16.0 / 15.0, -1.0 / 15.0);
}

ScalarField mul(const ScalarField& a, const ScalarField& b) {
    std::vector<double> v(a.values());
    const auto& w = b.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
    return ScalarField(a.grid(), std::move(v));
}

ScalarField quot(const ScalarField& a, const ScalarField& b) {
    std::vector<double> v(a.values());
    const auto& w = b.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] /= w[i];
    return ScalarField(a.grid(), std::move(v));
}

}  // namespace

SurfacePatch flat_patch() {
    SurfacePatch p;
    p.rho = [](double y1, double y2) { return Vec3{y1, y2, 0.0}; };
    p.kappa = [](double, double) { return Vec2{0.0, 0.0}; };
    p.metric = [](double, double) { return Vec2{1.0, 1.0}; };
    p.y1_range = {0.0, 1.0};
    p.y2_range = {0.0, 1.0};
    return p;
}

SurfacePatch sphere_patch(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere_patch: radius <= 0");
    SurfacePatch p;
    // y1 azimuth, y2 polar; this order makes rho_1 x rho_2 the inward normal.
    p.rho = [radius](double y1, double y2) {
        return Vec3{radius * std::sin(y2) * std::cos(y1),
                    radius * std::sin(y2) * std::sin(y1),
                    radius * std::cos(y2)};
    };
    p.kappa = [radius](double, double) {
        return Vec2{1.0 / radius, 1.0 / radius};
    };
    p.metric = [radius](double, double y2) {
        double s = radius * std::sin(y2);
        return Vec2{s * s, radius * radius};
    };
    p.y1_range = {0.3, 0.9};
    p.y2_range = {0.7, 1.3};
    return p;
}

SurfacePatch cylinder_patch(double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("cylinder_patch: radius <= 0");
    SurfacePatch p;
    // Clockwise angular arclength first so rho_1 x rho_2 points inward.
    p.rho = [radius](double y1, double y2) {
        return Vec3{radius * std::cos(y1 / radius),
                    -radius * std::sin(y1 / radius), y2};
    };
    p.kappa = [radius](double, double) { return Vec2{1.0 / radius, 0.0}; };
    p.metric = [](double, double) { return Vec2{1.0, 1.0}; };
    p.y1_range = {-0.5 * radius, 0.5 * radius};
    p.y2_range = {-0.5, 0.5};
    return p;
}

SurfacePatch make_patch(const std::string& type, double radius) {
    if (type == "flat") return flat_patch();
    if (type == "sphere") return sphere_patch(radius);
    if (type == "cylinder") return cylinder_patch(radius);
    throw std::invalid_argument("make_patch: unknown patch type '" + type + "'");
}

Chart::Chart(SurfacePatch patch, double depth, int n1, int n2, int nz)
    : patch_(std::move(patch)),
      depth_(depth),
      grid_(patch_.y1_range, patch_.y2_range, depth, n1, n2, nz),
      A_(grid_),
      B_(grid_),
      dA_{ScalarField(grid_), ScalarField(grid_), ScalarField(grid_)},
      dB_{ScalarField(grid_), ScalarField(grid_), ScalarField(grid_)} {
    const double w1 = patch_.y1_range[1] - patch_.y1_range[0];
    const double w2 = patch_.y2_range[1] - patch_.y2_range[0];
    const double h1 = 1e-6 * w1, h2 = 1e-6 * w2;

    for (auto* f : {&kap_[0], &kap_[1]}) {
        f->nx = n1;
        f->ny = n2;
        f->hx = grid_.hx();
        f->hy = grid_.hy();
        f->values.assign(std::size_t(n1) * n2, 0.0);
    }
    rho_nodes_.resize(std::size_t(n1) * n2);
    normal_.resize(std::size_t(n1) * n2);
    e1_.resize(std::size_t(n1) * n2);
    e2_.resize(std::size_t(n1) * n2);

    // Per-surface-node curvature/metric data; y-derivatives of the user
    // closures by the pinned-step central differences.
    std::vector<double> sg1(std::size_t(n1) * n2), sg2(sg1.size());
    std::vector<std::array<double, 2>> dsg1(sg1.size()), dsg2(sg1.size()),
        dk1(sg1.size()), dk2(sg1.size());
    double max_kappa = 0.0;
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const double y1 = grid_.x(i), y2 = grid_.y(j);
            const std::size_t s = sidx(i, j);
            Vec2 g = patch_.metric(y1, y2);
            if (!(g[0] > 0.0) || !(g[1] > 0.0))
                throw std::invalid_argument("Chart: non-positive metric g_jj");
            Vec2 ka = patch_.kappa(y1, y2);
            kap_[0](i, j) = ka[0];
            kap_[1](i, j) = ka[1];
            max_kappa = std::max({max_kappa, ka[0], ka[1]});
            sg1[s] = std::sqrt(g[0]);
            sg2[s] = std::sqrt(g[1]);

            auto sg1_y1 = [&](double t) { return std::sqrt(patch_.metric(t, y2)[0]); };
            auto sg1_y2 = [&](double t) { return std::sqrt(patch_.metric(y1, t)[0]); };
            auto sg2_y1 = [&](double t) { return std::sqrt(patch_.metric(t, y2)[1]); };
            auto sg2_y2 = [&](double t) { return std::sqrt(patch_.metric(y1, t)[1]); };
            auto k1_y1 = [&](double t) { return patch_.kappa(t, y2)[0]; };
            auto k1_y2 = [&](double t) { return patch_.kappa(y1, t)[0]; };
            auto k2_y1 = [&](double t) { return patch_.kappa(t, y2)[1]; };
            auto k2_y2 = [&](double t) { return patch_.kappa(y1, t)[1]; };
            dsg1[s] = {central(sg1_y1, y1, h1), central(sg1_y2, y2, h2)};
            dsg2[s] = {central(sg2_y1, y1, h1), central(sg2_y2, y2, h2)};
            dk1[s] = {central(k1_y1, y1, h1), central(k1_y2, y2, h2)};
            dk2[s] = {central(k2_y1, y1, h1), central(k2_y2, y2, h2)};

            rho_nodes_[s] = patch_.rho(y1, y2);
            auto rho_y1 = [&](double t) { return patch_.rho(t, y2); };
            auto rho_y2 = [&](double t) { return patch_.rho(y1, t); };
            Vec3 r1 = rich6(rho_y1, y1, 1e-2 * w1);
            Vec3 r2 = rich6(rho_y2, y2, 1e-2 * w2);
            Vec3 cr = cross(r1, r2);
            double cn = norm(cr);
            if (!(cn > 0.0))
                throw std::invalid_argument("Chart: degenerate parametrization");
            normal_[s] = (1.0 / cn) * cr;
            e1_[s] = (1.0 / norm(r1)) * r1;
            e2_[s] = (1.0 / norm(r2)) * r2;

            const double orth = std::abs(dot(r1, r2));
            if (orth > 1e-10 * (norm(r1) * norm(r2)) + 1e-12)
                throw std::invalid_argument(
                    "Chart: patch not in principal-curvature coordinates "
                    "(rho_1 . rho_2 != 0)");
            if (std::abs(dot(r1, r1) - g[0]) > 1e-8 * g[0] + 1e-10 ||
                std::abs(dot(r2, r2) - g[1]) > 1e-8 * g[1] + 1e-10)
                throw std::invalid_argument(
                    "Chart: metric closure disagrees with rho_j . rho_j");
        }

    if (depth * max_kappa >= 1.0)
        throw std::invalid_argument(
            "Chart: diffeomorphism violation, depth >= 1/max kappa");

    // G_jj(y,z) = g_jj(y) [1 - kappa_j(y) z]^2 through its square root;
    // z-derivatives are exact, y-derivatives use the closure differences.
    for (int k = 0; k < nz; ++k) {
        const double z = grid_.z(k);
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i) {
                const std::size_t s = sidx(i, j);
                const double m1 = 1.0 - kap_[0](i, j) * z;
                const double m2 = 1.0 - kap_[1](i, j) * z;
                A_(i, j, k) = sg1[s] * m1;
                B_(i, j, k) = sg2[s] * m2;
                dA_[0](i, j, k) = dsg1[s][0] * m1 - z * dk1[s][0] * sg1[s];
                dA_[1](i, j, k) = dsg1[s][1] * m1 - z * dk1[s][1] * sg1[s];
                dA_[2](i, j, k) = -kap_[0](i, j) * sg1[s];
                dB_[0](i, j, k) = dsg2[s][0] * m2 - z * dk2[s][0] * sg2[s];
                dB_[1](i, j, k) = dsg2[s][1] * m2 - z * dk2[s][1] * sg2[s];
                dB_[2](i, j, k) = -kap_[1](i, j) * sg2[s];
            }
    }
    validate();
}

Vec3 Chart::position(int i, int j, int k) const {
    const std::size_t s = sidx(i, j);
    return rho_nodes_[s] + grid_.z(k) * normal_[s];
}

Vec3 Chart::frame(int axis, int i, int j) const {
    const std::size_t s = sidx(i, j);
    return axis == 0 ? e1_[s] : axis == 1 ? e2_[s] : normal_[s];
}

Vec3 Chart::dF(int axis, int i, int j, int k) const {
    if (axis == 2) return normal_[sidx(i, j)];
    return axis == 0 ? A_(i, j, k) * e1_[sidx(i, j)]
                     : B_(i, j, k) * e2_[sidx(i, j)];
}

double Chart::robin_h(int i, int j, double z) const {
    const double k1 = kap_[0](i, j), k2 = kap_[1](i, j);
    return -k1 / (1.0 - k1 * z) - k2 / (1.0 - k2 * z);
}

void Chart::validate() const {
    // Spot-check the honest Jacobian of F(y,z) = rho + z n against the
    // constructed metric: cross terms vanish and |d_jF|^2 = G_jj.
    const double w1 = patch_.y1_range[1] - patch_.y1_range[0];
    const double w2 = patch_.y2_range[1] - patch_.y2_range[0];
    const int si = std::max(1, grid_.nx() / 4), sj = std::max(1, grid_.ny() / 4),
              sk = std::max(1, grid_.nz() / 4);
    auto n_of = [&](double y1, double y2) {
        auto r1 =
            rich6([&](double t) { return patch_.rho(t, y2); }, y1, 1e-2 * w1);
        auto r2 =
            rich6([&](double t) { return patch_.rho(y1, t); }, y2, 1e-2 * w2);
        Vec3 cr = cross(r1, r2);
        return (1.0 / norm(cr)) * cr;
    };
    for (int k = 0; k < grid_.nz(); k += sk)
        for (int j = 0; j < grid_.ny(); j += sj)
            for (int i = 0; i < grid_.nx(); i += si) {
                const double y1 = grid_.x(i), y2 = grid_.y(j), z = grid_.z(k);
                auto F_y1 = [&](double t) {
                    return patch_.rho(t, y2) + z * n_of(t, y2);
                };
                auto F_y2 = [&](double t) {
                    return patch_.rho(y1, t) + z * n_of(y1, t);
                };
                Vec3 c1 = rich6(F_y1, y1, 1e-2 * w1);
                Vec3 c2 = rich6(F_y2, y2, 1e-2 * w2);
                Vec3 c3 = normal_[sidx(i, j)];
                const double s11 = A_(i, j, k), s22 = B_(i, j, k);
                if (!(s11 > 0.0) || !(s22 > 0.0))
                    throw std::invalid_argument("Chart: non-positive G_jj");
                if (std::abs(dot(c1, c2)) > 1e-10 * s11 * s22 + 1e-11 ||
                    std::abs(dot(c1, c3)) > 1e-10 * s11 + 1e-11 ||
                    std::abs(dot(c2, c3)) > 1e-10 * s22 + 1e-11)
                    throw std::invalid_argument(
                        "Chart: Jacobian cross terms exceed 1e-10");
                if (std::abs(dot(c1, c1) - s11 * s11) >
                        1e-8 * s11 * s11 + 1e-10 ||
                    std::abs(dot(c2, c2) - s22 * s22) >
                        1e-8 * s22 * s22 + 1e-10)
                    throw std::invalid_argument(
                        "Chart: G_jj disagrees with the sampled Jacobian");
            }
}

std::shared_ptr<const Chart> build_chart(const SurfacePatch& patch,
                                         double depth, int n1, int n2, int nz) {
    return std::make_shared<const Chart>(patch, depth, n1, n2, nz);
}

CurvilinearVectorField CurvilinearVectorField::from_frame(
    std::shared_ptr<const Chart> chart, std::array<ScalarField, 3> frame) {
    std::array<ScalarField, 3> b{mul(frame[0], chart->sqrtG11()),
                                 mul(frame[1], chart->sqrtG22()), frame[2]};
    return CurvilinearVectorField{std::move(chart), std::move(b),
                                  std::move(frame)};
}

double CurvilinearVectorField::weight_defect() const {
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& bf = b[c].values();
        const auto& ff = frame[c].values();
        const ScalarField* w =
            c == 0 ? &chart->sqrtG11() : c == 1 ? &chart->sqrtG22() : nullptr;
        for (std::size_t i = 0; i < bf.size(); ++i) {
            double expect = w ? ff[i] * w->values()[i] : ff[i];
            double scale = std::max({std::abs(bf[i]), std::abs(expect), 1.0});
            worst = std::max(worst, std::abs(bf[i] - expect) / scale);
        }
    }
    return worst;
}

CurvilinearVectorField pushforward(
    const std::function<Vec3(double, double, double)>& cartesian_field,
    std::shared_ptr<const Chart> chart) {
    const GridSpec& g = chart->grid();
    std::array<ScalarField, 3> frame{ScalarField(g), ScalarField(g),
                                     ScalarField(g)};
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                Vec3 x = chart->position(i, j, k);
                Vec3 v = cartesian_field(x[0], x[1], x[2]);
                for (int c = 0; c < 3; ++c)
                    frame[c](i, j, k) = dot(v, chart->frame(c, i, j));
            }
    for (auto& f : frame) f.validate_finite("pushforward");
    return CurvilinearVectorField::from_frame(chart, std::move(frame));
}

VectorField reconstruct(const CurvilinearVectorField& u) {
    const GridSpec& g = u.chart->grid();
    VectorField out(g);
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                Vec3 v{0, 0, 0};
                for (int c = 0; c < 3; ++c)
                    v = v + u.frame[c](i, j, k) * u.chart->frame(c, i, j);
                for (int c = 0; c < 3; ++c) out.comp(c)(i, j, k) = v[c];
            }
    return out;
}

ScalarField div_curvilinear(const CurvilinearVectorField& u,
                            const StencilPolicy& pol) {
    const Chart& ch = *u.chart;
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    ScalarField t1 = d_axis(mul(B, u.frame[0]), 0, pol);
    ScalarField t2 = d_axis(mul(A, u.frame[1]), 1, pol);
    ScalarField t3 = d_axis(mul(mul(A, B), u.frame[2]), 2, pol);
    return quot(t1 + t2 + t3, mul(A, B));
}

CurvilinearVectorField curl_curvilinear(const CurvilinearVectorField& u,
                                        const StencilPolicy& pol) {
    const Chart& ch = *u.chart;
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    ScalarField r1 = quot(d_axis(u.b[2], 1, pol) - d_axis(u.b[1], 2, pol), B);
    ScalarField r2 = quot(d_axis(u.b[0], 2, pol) - d_axis(u.b[2], 0, pol), A);
    ScalarField r3 =
        quot(d_axis(u.b[1], 0, pol) - d_axis(u.b[0], 1, pol), mul(A, B));
    return CurvilinearVectorField::from_frame(u.chart, {r1, r2, r3});
}

namespace {

struct Brackets {
    ScalarField b12;  // (1/(AB)) [d1(u2 B) - d2(u1 A)]   = R3
    ScalarField b31;  // (B/A)    [d3(u1 A) - d1 u3]      = B R2
    ScalarField b23;  // (A/B)    [d2 u3    - d3(u2 B)]   = A R1
};

Brackets make_brackets(const CurvilinearVectorField& u,
                       const StencilPolicy& pol) {
    const Chart& ch = *u.chart;
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    const ScalarField &u1 = u.frame[0], &u2 = u.frame[1], &u3 = u.frame[2];
    return {quot(d_axis(mul(u2, B), 0, pol) - d_axis(mul(u1, A), 1, pol),
                 mul(A, B)),
            mul(quot(B, A), d_axis(mul(u1, A), 2, pol) - d_axis(u3, 0, pol)),
            mul(quot(A, B), d_axis(u3, 1, pol) - d_axis(mul(u2, B), 2, pol))};
}

}  // namespace

CurvilinearVectorField curlcurl_curvilinear(const CurvilinearVectorField& u,
                                            const StencilPolicy& pol) {
    const Chart& ch = *u.chart;
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    Brackets br = make_brackets(u, pol);
    ScalarField t1 = quot(d_axis(br.b12, 1, pol) - d_axis(br.b31, 2, pol), B);
    ScalarField t2 = quot(d_axis(br.b23, 2, pol) - d_axis(br.b12, 0, pol), A);
    ScalarField t3 =
        quot(d_axis(br.b31, 0, pol) - d_axis(br.b23, 1, pol), mul(A, B));
    return CurvilinearVectorField::from_frame(u.chart, {t1, t2, t3});
}

LowerOrderTerms lower_order_terms(const CurvilinearVectorField& u,
                                  const StencilPolicy& pol,
                                  double div_tol_factor) {
    const Chart& ch = *u.chart;
    const GridSpec& g = ch.grid();
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    const ScalarField &A1 = ch.d_sqrtG11(0), &A2 = ch.d_sqrtG11(1),
                      &A3 = ch.d_sqrtG11(2);
    const ScalarField &B1 = ch.d_sqrtG22(0), &B2 = ch.d_sqrtG22(1),
                      &B3 = ch.d_sqrtG22(2);
    const ScalarField &u1 = u.frame[0], &u2 = u.frame[1], &u3 = u.frame[2];

    // The zeta derivations use div u = 0; enforce it up to the sampled-field
    // discretization level.
    {
        double dv = div_curvilinear(u, pol).max_abs();
        double h = g.h_min();
        double scale =
            std::max(1.0, std::max({u1.max_abs(), u2.max_abs(), u3.max_abs()}));
        if (dv > div_tol_factor * h * h * scale) {
            std::ostringstream os;
            os << "lower_order_terms: field not divergence-free to tolerance "
                  "(|div| = "
               << dv << " > " << div_tol_factor * h * h * scale << ")";
            throw std::invalid_argument(os.str());
        }
    }

    auto neg = [](const ScalarField& f) { return -1.0 * f; };

    const ScalarField d1u1 = d_axis(u1, 0, pol), d2u1 = d_axis(u1, 1, pol),
                      d3u1 = d_axis(u1, 2, pol);
    const ScalarField d1u2 = d_axis(u2, 0, pol), d2u2 = d_axis(u2, 1, pol),
                      d3u2 = d_axis(u2, 2, pol);
    const ScalarField d1u3 = d_axis(u3, 0, pol), d2u3 = d_axis(u3, 1, pol),
                      d3u3 = d_axis(u3, 2, pol);

    const ScalarField AB = mul(A, B);
    const ScalarField AB2 = mul(AB, AB);
    const ScalarField Asq = mul(A, A), Bsq = mul(B, B);
    // Metric-combination derivatives by the chain rule from the cached
    // partials of sqrt(G_11), sqrt(G_22).
    const ScalarField C12 = neg(quot(mul(A2, B) + mul(A, B2), AB2));
    const ScalarField C21 = neg(quot(mul(A1, B) + mul(A, B1), AB2));
    const ScalarField C13 = quot(mul(B3, A) - mul(B, A3), Asq);
    const ScalarField C31 = quot(mul(B1, A) - mul(B, A1), Asq);
    const ScalarField C23 = quot(mul(A3, B) - mul(A, B3), Bsq);
    const ScalarField C32 = quot(mul(A2, B) - mul(A, B2), Bsq);

    const ScalarField u1A = mul(u1, A), u2B = mul(u2, B);
    const ScalarField br12 = d_axis(u2B, 0, pol) - d_axis(u1A, 1, pol);
    const ScalarField br31 = d_axis(u1A, 2, pol) - d1u3;
    const ScalarField br23 = d2u3 - d_axis(u2B, 2, pol);

    ScalarField phi1 =
        quot(mul(d2u2, B1) + d_axis(mul(u2, B2), 0, pol) - mul(d2u1, A2) -
                 d_axis(mul(u1, A2), 1, pol),
             mul(Bsq, A)) +
        mul(quot(C12, B), br12) -
        quot(mul(d3u1, A3) + d_axis(mul(u1, A3), 2, pol), A) -
        mul(quot(C13, B), br31);

    // phi_2: the derivation gives d2(u1) A1 in the third bracket; the text
    // prints d2(u2) A1.
    auto phi2_with = [&](const ScalarField& third_term) {
        return neg(quot(mul(d3u2, B3) + d_axis(mul(u2, B3), 2, pol), B)) +
               mul(quot(C23, A), br23) -
               quot(mul(d1u2, B1) + d_axis(mul(u2, B1), 0, pol) - third_term -
                        d_axis(mul(u1, A2), 0, pol),
                    mul(Asq, B)) -
               mul(quot(C21, A), br12);
    };
    ScalarField phi2 = phi2_with(mul(d2u1, A1));
    ScalarField phi2_printed = phi2_with(mul(d2u2, A1));

    // phi_3: the derivation gives d3(u2 B2) in the third bracket; the text
    // prints u3 in place of u2.
    auto phi3_with = [&](const ScalarField& inner) {
        return quot(mul(d1u1, A3) + d_axis(mul(u1, A1), 2, pol), Asq) +
               mul(quot(C31, AB), br31) +
               quot(mul(d2u2, B3) + d_axis(inner, 2, pol), Bsq) -
               mul(quot(C32, AB), br23);
    };
    ScalarField phi3 = phi3_with(mul(u2, B2));
    ScalarField phi3_printed = phi3_with(mul(u3, B2));

    // D = u1 d1 sqrtG22 + u2 d2 sqrtG11 + u3 d3 sqrtG.
    const ScalarField D =
        mul(u1, B1) + mul(u2, A2) + mul(u3, mul(A3, B) + mul(A, B3));

    ScalarField zeta1 = neg(mul(d1u1, neg(quot(2.0 * A1, mul(Asq, A))))) -
                        mul(d2u2, C21) - mul(d3u3, neg(quot(A1, Asq))) -
                        d_axis(quot(D, mul(Asq, B)), 0, pol);
    ScalarField zeta2 = neg(mul(d1u1, C12)) -
                        mul(d2u2, neg(quot(2.0 * B2, mul(Bsq, B)))) -
                        mul(d3u3, neg(quot(B2, Bsq))) -
                        d_axis(quot(D, mul(Bsq, A)), 1, pol);
    // zeta_3: dividing the divergence identity by sqrt(G) gives the
    // coefficient d3(1/sqrtG22) on d2(u2) and the bracket divisor sqrt(G);
    // the text prints d3(1/G22) and 1/G.
    ScalarField zeta3_first = neg(mul(d1u1, neg(quot(A3, Asq))));
    ScalarField zeta3 = zeta3_first - mul(d2u2, neg(quot(B3, Bsq))) -
                        d_axis(quot(D, AB), 2, pol);
    ScalarField zeta3_printed =
        zeta3_first - mul(d2u2, neg(quot(2.0 * B3, mul(Bsq, B)))) -
        d_axis(quot(D, mul(Asq, Bsq)), 2, pol);

    return LowerOrderTerms{{phi1, phi2, phi3},
                           {zeta1, zeta2, zeta3},
                           {phi1, phi2_printed, phi3_printed},
                           {zeta1, zeta2, zeta3_printed}};
}

TTildeForms ttilde_forms(const CurvilinearVectorField& u,
                         const StencilPolicy& pol, double div_tol_factor) {
    const Chart& ch = *u.chart;
    const ScalarField &A = ch.sqrtG11(), &B = ch.sqrtG22();
    const ScalarField &u1 = u.frame[0], &u2 = u.frame[1], &u3 = u.frame[2];
    LowerOrderTerms lot = lower_order_terms(u, pol, div_tol_factor);

    const ScalarField Asq = mul(A, A), Bsq = mul(B, B), AB = mul(A, B);
    auto dd = [&](const ScalarField& f, int a1, int a2) {
        return d_axis(d_axis(f, a1, pol), a2, pol);
    };

    auto phi_form = [&](const std::array<ScalarField, 3>& phi) {
        ScalarField t1 = -1.0 * quot(dd(u1, 1, 1), Bsq) - dd(u1, 2, 2) +
                         quot(dd(u2, 0, 1), AB) + quot(dd(u3, 0, 2), A) +
                         phi[0];
        ScalarField t2 = -1.0 * quot(dd(u2, 0, 0), Asq) - dd(u2, 2, 2) +
                         quot(dd(u1, 0, 1), AB) + quot(dd(u3, 1, 2), B) +
                         phi[1];
        ScalarField t3 = -1.0 * quot(dd(u3, 0, 0), Asq) -
                         quot(dd(u3, 1, 1), Bsq) + quot(dd(u1, 0, 2), A) +
                         quot(dd(u2, 1, 2), B) + phi[2];
        return std::array<ScalarField, 3>{t1, t2, t3};
    };

    auto principal_form = [&](const std::array<ScalarField, 3>& zeta,
                              const std::array<ScalarField, 3>& phi) {
        const ScalarField* uu[3] = {&u1, &u2, &u3};
        std::array<ScalarField, 3> out{ScalarField(ch.grid()),
                                       ScalarField(ch.grid()),
                                       ScalarField(ch.grid())};
        for (int c = 0; c < 3; ++c)
            out[c] = -1.0 * quot(dd(*uu[c], 0, 0), Asq) -
                     quot(dd(*uu[c], 1, 1), Bsq) - dd(*uu[c], 2, 2) + zeta[c] +
                     phi[c];
        return out;
    };

    return TTildeForms{curlcurl_curvilinear(u, pol).frame,
                       phi_form(lot.phi),
                       principal_form(lot.zeta, lot.phi),
                       phi_form(lot.phi_printed),
                       principal_form(lot.zeta_printed, lot.phi_printed)};
}

SurfaceField robin_coefficient(const Chart& chart) {
    const GridSpec& g = chart.grid();
    SurfaceField H;
    H.nx = g.nx();
    H.ny = g.ny();
    H.hx = g.hx();
    H.hy = g.hy();
    H.values.assign(std::size_t(g.nx()) * g.ny(), 0.0);
    const ScalarField &A = chart.sqrtG11(), &B = chart.sqrtG22();
    const ScalarField &A3 = chart.d_sqrtG11(2), &B3 = chart.d_sqrtG22(2);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            double h = (A3(i, j, 0) * B(i, j, 0) + A(i, j, 0) * B3(i, j, 0)) /
                       (A(i, j, 0) * B(i, j, 0));
            double expect = -(chart.kappa1(i, j) + chart.kappa2(i, j));
            if (std::abs(h - expect) > 1e-10 * (1.0 + std::abs(expect)))
                throw std::logic_error(
                    "robin_coefficient: metric formula disagrees with "
                    "-(kappa1+kappa2)");
            H(i, j) = h;
        }
    return H;
}

ScalarField exp_gauge(const ScalarField& u3, const Chart& chart) {
    const GridSpec& g = chart.grid();
    if (!(u3.grid() == g))
        throw std::invalid_argument("exp_gauge: field not on the chart grid");
    ScalarField out(g);
    const double hz = g.hz();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            double acc = 0.0;
            double h_prev = chart.robin_h(i, j, 0.0);
            out(i, j, 0) = u3(i, j, 0);  // exp(0) = 1, kept bitwise
            for (int k = 1; k < g.nz(); ++k) {
                double h_here = chart.robin_h(i, j, g.z(k));
                acc += 0.5 * hz * (h_prev + h_here);
                h_prev = h_here;
                out(i, j, k) = std::exp(acc) * u3(i, j, k);
            }
        }
    return out;
}

}  // namespace curlheat
