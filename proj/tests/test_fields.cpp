#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "curlheat/field.hpp"
#include "curlheat/snapshot.hpp"
#include "test_util.hpp"

using namespace curlheat;

TEST_CASE("GridSpec validates counts and extents") {
    CHECK_THROWS(GridSpec({0, 1}, {0, 1}, 1.0, 3, 8, 8));
    CHECK_THROWS(GridSpec({1, 0}, {0, 1}, 1.0, 8, 8, 8));
    CHECK_THROWS(GridSpec({0, 1}, {0, 1}, -1.0, 8, 8, 8));
    GridSpec g({0, 2}, {0, 1}, 1.0, 5, 5, 5);
    CHECK(g.hx() == doctest::Approx(0.5));
    CHECK(g.hx() == (2.0 - 0.0) / (5 - 1));  // exact by construction
    CHECK(g.face_tag(Face::ZMin) == FaceTag::FlatSigma);
    CHECK(g.face_tag(Face::ZMax) == FaceTag::Outer);
    CHECK(g.face_tag(Face::XMin) == FaceTag::Outer);
}

TEST_CASE("sample: zero and affine fields") {
    GridSpec g = unit_grid(5);
    auto zero = sample_scalar(g, [](double, double, double) { return 0.0; });
    CHECK(zero.max_abs() == 0.0);

    auto aff = sample_scalar(
        g, [](double x, double y, double z) { return x + y + z; });
    CHECK(aff(0, 0, 0) == 0.0);
    CHECK(aff(4, 4, 4) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("sample: bitwise match of direct per-node evaluation") {
    GridSpec g = unit_grid(17);
    auto fn = [](double x, double y, double z) {
        return std::sin(M_PI * x) * std::sin(M_PI * y) * z * z;
    };
    auto f = sample_scalar(g, fn);
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i)
                CHECK(f(i, j, k) == fn(g.x(i), g.y(j), g.z(k)));
}

TEST_CASE("sample rejects non-finite values naming the node") {
    GridSpec g = unit_grid(4);
    auto bad = [](double x, double, double) {
        return x > 0.9 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    CHECK_THROWS_WITH_AS(sample_scalar(g, bad),
                         doctest::Contains("non-finite value at node"),
                         std::invalid_argument);
}

TEST_CASE("field constructors reject NaN/Inf") {
    GridSpec g = unit_grid(4);
    std::vector<double> v(g.size(), 0.0);
    v[7] = std::numeric_limits<double>::infinity();
    CHECK_THROWS(ScalarField(g, v));
}

TEST_CASE("subgrid_restrict: superset, definitional and brute-force count") {
    GridSpec g = unit_grid(9);
    VectorField u(g, 1.0);

    auto full = subgrid_restrict(u, 1.01 * std::sqrt(3.0));
    CHECK(full.mask.count() == g.size());

    auto half = subgrid_restrict(u, 0.5);
    for (int k = 0; k < g.nz(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                double r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j) + g.z(k) * g.z(k);
                CHECK(half.mask.inside(i, j, k) == (r2 <= 0.25));
            }

    GridSpec g33 = unit_grid(33);
    VectorField u33(g33, 0.0);
    auto r = subgrid_restrict(u33, 0.5);
    std::size_t brute = 0;
    for (int k = 0; k < g33.nz(); ++k)
        for (int j = 0; j < g33.ny(); ++j)
            for (int i = 0; i < g33.nx(); ++i)
                if (g33.x(i) * g33.x(i) + g33.y(j) * g33.y(j) +
                        g33.z(k) * g33.z(k) <=
                    0.25)
                    ++brute;
    CHECK(r.mask.count() == brute);

    CHECK_THROWS(subgrid_restrict(u, 0.0));
    CHECK_THROWS(subgrid_restrict(u, 100.0));
}

TEST_CASE("subgrid_restrict masks are monotone in radius") {
    GridSpec g = default_domain_grid(9);
    VectorField u(g, 0.0);
    double radii[] = {0.1, 0.25, 0.4, 0.7};
    for (int a = 0; a + 1 < 4; ++a) {
        auto ma = subgrid_restrict(u, radii[a]).mask;
        auto mb = subgrid_restrict(u, radii[a + 1]).mask;
        CHECK(ma.subset_of(mb));
    }
}

TEST_CASE("boundary_trace: affine and quadratic exactness") {
    GridSpec g = unit_grid(8);
    double cval = 0.75;
    auto u = sample_vector(g, [&](double, double, double z) {
        return Vec3{z, z, cval};
    });
    auto tr = boundary_trace(u);
    CHECK(tr.tangential1.max_abs() == 0.0);
    CHECK(tr.tangential2.max_abs() == 0.0);
    for (double v : tr.normal.values) CHECK(v == cval);
    CHECK(tr.normal_derivative.max_abs() == 0.0);

    auto uq = sample_vector(
        g, [](double, double, double z) { return Vec3{0.0, 0.0, z * z}; });
    auto trq = boundary_trace(uq);
    // (-3*0 + 4h^2 - (2h)^2)/(2h) = 0: the one-sided stencil is exact on
    // quadratics.
    CHECK(trq.normal_derivative.max_abs() <= 1e-14);
}

TEST_CASE("boundary_trace: second-order convergence on a smooth field") {
    std::mt19937_64 rng(31);
    auto fn = curlheat::test::random_smooth_vector(rng);
    auto dz_exact = [&](double x, double y) {
        double h = 1e-6;
        return (fn(x, y, h)[2] - fn(x, y, -h)[2]) / (2 * h);
    };
    double errs[2];
    int ns[2] = {17, 33};
    for (int t = 0; t < 2; ++t) {
        GridSpec g = unit_grid(ns[t]);
        auto u = sample_vector(g, fn);
        auto tr = boundary_trace(u);
        double e = 0.0;
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i)
                e = std::max(e, std::abs(tr.normal_derivative(i, j) -
                                         dz_exact(g.x(i), g.y(j))));
        errs[t] = e;
    }
    double p = curlheat::test::observed_order(errs[0], errs[1], 1.0 / 16,
                                              1.0 / 32);
    CHECK(p > 1.8);
    CHECK(p < 2.2);
}

TEST_CASE("trace of a field with vanishing tangential data is exactly zero") {
    GridSpec g = unit_grid(9);
    auto u = sample_vector(g, [](double x, double y, double z) {
        return Vec3{z * std::sin(x), z * std::cos(y), std::cos(z)};
    });
    auto tr = boundary_trace(u);
    CHECK(tr.tangential1.max_abs() == 0.0);
    CHECK(tr.tangential2.max_abs() == 0.0);
}

TEST_CASE("snapshot round-trips bit-exactly") {
    GridSpec g({-0.3, 0.7}, {0.1, 1.1}, 0.9, 5, 6, 7);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-10, 10);
    VectorField u(g);
    for (int c = 0; c < 3; ++c)
        for (double& v : u.comp(c).values()) v = d(rng);

    auto path = std::filesystem::temp_directory_path() / "curlheat_snap_test.fld";
    write_snapshot(path.string(), u);
    auto snap = read_snapshot(path.string());
    REQUIRE(snap.ncomp == 3);
    CHECK(snap.grid == g);
    VectorField back = snap.as_vector();
    for (int c = 0; c < 3; ++c)
        for (std::size_t idx = 0; idx < g.size(); ++idx)
            CHECK(back.comp(c).values()[idx] == u.comp(c).values()[idx]);
    std::filesystem::remove(path);
}

TEST_CASE("snapshot payload layout is component-major, x fastest") {
    GridSpec g({0, 1}, {0, 1}, 1.0, 4, 4, 4);
    ScalarField f(g);
    for (std::size_t idx = 0; idx < g.size(); ++idx) f.values()[idx] = double(idx);
    auto path = std::filesystem::temp_directory_path() / "curlheat_layout.fld";
    write_snapshot(path.string(), f);

    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header.substr(0, 17) == "CURLHEAT1 4 4 4 1");
    double first3[3];
    in.read(reinterpret_cast<char*>(first3), sizeof(first3));
    // x varies fastest: consecutive payload entries step i at fixed (j,k).
    CHECK(first3[0] == f(0, 0, 0));
    CHECK(first3[1] == f(1, 0, 0));
    CHECK(first3[2] == f(2, 0, 0));
    std::filesystem::remove(path);
}
