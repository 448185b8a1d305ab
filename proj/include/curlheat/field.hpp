#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curlheat/grid.hpp"
#include "curlheat/vec.hpp"

namespace curlheat {

/// Scalar grid function. Values are validated finite on construction.
class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid, double fill = 0.0);
    ScalarField(const GridSpec& grid, std::vector<double> values);

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator()(int i, int j, int k) const {
        return values_[grid_.index(i, j, k)];
    }
    double& operator()(int i, int j, int k) {
        return values_[grid_.index(i, j, k)];
    }
    double at(std::size_t idx) const { return values_[idx]; }

    double max_abs() const;
    void validate_finite(const char* who) const;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

class VectorField {
public:
    explicit VectorField(const GridSpec& grid, double fill = 0.0);
    VectorField(ScalarField c1, ScalarField c2, ScalarField c3);

    const GridSpec& grid() const { return comp_[0].grid(); }
    const ScalarField& comp(int c) const { return comp_[c]; }
    ScalarField& comp(int c) { return comp_[c]; }

    Vec3 at(int i, int j, int k) const {
        return {comp_[0](i, j, k), comp_[1](i, j, k), comp_[2](i, j, k)};
    }
    double max_abs() const;

private:
    std::array<ScalarField, 3> comp_;
};

class MatrixField {
public:
    explicit MatrixField(const GridSpec& grid, double fill = 0.0);

    const GridSpec& grid() const { return entry_[0].grid(); }
    const ScalarField& entry(int r, int c) const { return entry_[3 * r + c]; }
    ScalarField& entry(int r, int c) { return entry_[3 * r + c]; }

    Mat3 at(int i, int j, int k) const;

private:
    std::vector<ScalarField> entry_;  // row-major 3x3
};

/// Node subset of a grid (half-ball restrictions and the like).
class Mask {
public:
    explicit Mask(const GridSpec& grid, bool fill = true);

    const GridSpec& grid() const { return grid_; }
    bool inside(int i, int j, int k) const {
        return flags_[grid_.index(i, j, k)] != 0;
    }
    void set(int i, int j, int k, bool v) {
        flags_[grid_.index(i, j, k)] = v ? 1 : 0;
    }
    std::size_t count() const;
    bool subset_of(const Mask& other) const;

private:
    GridSpec grid_;
    std::vector<std::uint8_t> flags_;
};

/// 2-D field on the Sigma face (z=0), x-fastest.
struct SurfaceField {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    std::vector<double> values;

    double operator()(int i, int j) const { return values[i + std::size_t(nx) * j]; }
    double& operator()(int i, int j) { return values[i + std::size_t(nx) * j]; }
    double max_abs() const;
};

ScalarField sample_scalar(const GridSpec& grid,
                          const std::function<double(double, double, double)>& fn);
VectorField sample_vector(const GridSpec& grid,
                          const std::function<Vec3(double, double, double)>& fn);
MatrixField sample_matrix(const GridSpec& grid,
                          const std::function<Mat3(double, double, double)>& fn);

struct RestrictedField {
    VectorField field;
    Mask mask;
};

/// Marks nodes with x^2+y^2+z^2 <= radius^2 (half-ball B_radius^+ about the
/// origin, which sits on Sigma). The field itself is returned unchanged;
/// downstream norms honor the mask.
RestrictedField subgrid_restrict(const VectorField& field, double radius);
Mask half_ball_mask(const GridSpec& grid, double radius);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

struct BoundaryTrace {
    SurfaceField tangential1, tangential2;  // u1, u2 at z=0
    SurfaceField normal;                    // u3 at z=0
    SurfaceField normal_derivative;         // d(u3)/dz at z=0, one-sided O(h^2)
};

/// Traces on Sigma. The outer normal there is nu = (0,0,-1) (the domain is
/// z > 0); normal_derivative reports d/dz, so d/dnu = -normal_derivative.
/// This is the single place fixing the sign convention.
BoundaryTrace boundary_trace(const VectorField& u);

}  // namespace curlheat
