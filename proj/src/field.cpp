#include "curlheat/field.hpp"

#include <algorithm>
#include <sstream>

namespace curlheat {

ScalarField::ScalarField(const GridSpec& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {
    if (!std::isfinite(fill))
        throw std::invalid_argument("ScalarField: non-finite fill value");
}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("ScalarField: values length != grid size");
    validate_finite("ScalarField");
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void ScalarField::validate_finite(const char* who) const {
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        if (!std::isfinite(values_[idx])) {
            std::ostringstream os;
            os << who << ": non-finite value at flat index " << idx;
            throw std::invalid_argument(os.str());
        }
    }
}

VectorField::VectorField(const GridSpec& grid, double fill)
    : comp_{ScalarField(grid, fill), ScalarField(grid, fill),
            ScalarField(grid, fill)} {}

VectorField::VectorField(ScalarField c1, ScalarField c2, ScalarField c3)
    : comp_{std::move(c1), std::move(c2), std::move(c3)} {
    if (!(comp_[0].grid() == comp_[1].grid()) ||
        !(comp_[0].grid() == comp_[2].grid()))
        throw std::invalid_argument("VectorField: components on different grids");
}

double VectorField::max_abs() const {
    return std::max({comp_[0].max_abs(), comp_[1].max_abs(), comp_[2].max_abs()});
}

MatrixField::MatrixField(const GridSpec& grid, double fill) {
    entry_.reserve(9);
    for (int e = 0; e < 9; ++e) entry_.emplace_back(grid, fill);
}

Mat3 MatrixField::at(int i, int j, int k) const {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = entry(r, c)(i, j, k);
    return m;
}

Mask::Mask(const GridSpec& grid, bool fill)
    : grid_(grid), flags_(grid.size(), fill ? 1 : 0) {}

std::size_t Mask::count() const {
    std::size_t n = 0;
    for (auto f : flags_) n += f;
    return n;
}

bool Mask::subset_of(const Mask& other) const {
    if (!(grid_ == other.grid_)) return false;
    for (std::size_t idx = 0; idx < flags_.size(); ++idx)
        if (flags_[idx] && !other.flags_[idx]) return false;
    return true;
}

double SurfaceField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {
[[noreturn]] void throw_bad_sample(const GridSpec& g, int i, int j, int k) {
    std::ostringstream os;
    os << "sample: non-finite value at node (" << i << "," << j << "," << k
       << ") = (" << g.x(i) << "," << g.y(j) << "," << g.z(k) << ")";
    throw std::invalid_argument(os.str());
}
}  // namespace

ScalarField sample_scalar(const GridSpec& grid,
                          const std::function<double(double, double, double)>& fn) {
    ScalarField out(grid);
    for (int k = 0; k < grid.nz(); ++k)
        for (int j = 0; j < grid.ny(); ++j)
            for (int i = 0; i < grid.nx(); ++i) {
                double v = fn(grid.x(i), grid.y(j), grid.z(k));
                if (!std::isfinite(v)) throw_bad_sample(grid, i, j, k);
                out(i, j, k) = v;
            }
    return out;
}

VectorField sample_vector(const GridSpec& grid,
                          const std::function<Vec3(double, double, double)>& fn) {
    VectorField out(grid);
    for (int k = 0; k < grid.nz(); ++k)
        for (int j = 0; j < grid.ny(); ++j)
            for (int i = 0; i < grid.nx(); ++i) {
                Vec3 v = fn(grid.x(i), grid.y(j), grid.z(k));
                for (int c = 0; c < 3; ++c) {
                    if (!std::isfinite(v[c])) throw_bad_sample(grid, i, j, k);
                    out.comp(c)(i, j, k) = v[c];
                }
            }
    return out;
}

MatrixField sample_matrix(const GridSpec& grid,
                          const std::function<Mat3(double, double, double)>& fn) {
    MatrixField out(grid);
    for (int k = 0; k < grid.nz(); ++k)
        for (int j = 0; j < grid.ny(); ++j)
            for (int i = 0; i < grid.nx(); ++i) {
                Mat3 m = fn(grid.x(i), grid.y(j), grid.z(k));
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) {
                        if (!std::isfinite(m[r][c]))
                            throw_bad_sample(grid, i, j, k);
                        out.entry(r, c)(i, j, k) = m[r][c];
                    }
            }
    return out;
}

Mask half_ball_mask(const GridSpec& grid, double radius) {
    const double lx = grid.x1() - grid.x0(), ly = grid.y1() - grid.y0(),
                 lz = grid.z1();
    // Radii up to the extent diagonal are meaningful restrictions; a little
    // headroom past it yields the trivial all-true mask.
    const double diag = std::sqrt(lx * lx + ly * ly + lz * lz);
    if (!(radius > 0.0) || radius > 2.0 * diag)
        throw std::invalid_argument(
            "half_ball_mask: radius out of range (0, 2*extent diagonal]");
    Mask m(grid, false);
    const double r2 = radius * radius;
    for (int k = 0; k < grid.nz(); ++k)
        for (int j = 0; j < grid.ny(); ++j)
            for (int i = 0; i < grid.nx(); ++i) {
                double x = grid.x(i), y = grid.y(j), z = grid.z(k);
                if (x * x + y * y + z * z <= r2) m.set(i, j, k, true);
            }
    return m;
}

RestrictedField subgrid_restrict(const VectorField& field, double radius) {
    return {field, half_ball_mask(field.grid(), radius)};
}

namespace {
ScalarField zip(const ScalarField& a, const ScalarField& b, double sb) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("field op: grids differ");
    std::vector<double> v(a.values());
    const auto& w = b.values();
    for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] += sb * w[idx];
    return ScalarField(a.grid(), std::move(v));
}
}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, 1.0);
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, -1.0);
}
ScalarField operator*(double s, const ScalarField& a) {
    std::vector<double> v(a.values());
    for (double& x : v) x *= s;
    return ScalarField(a.grid(), std::move(v));
}
VectorField operator+(const VectorField& a, const VectorField& b) {
    return VectorField(a.comp(0) + b.comp(0), a.comp(1) + b.comp(1),
                       a.comp(2) + b.comp(2));
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    return VectorField(a.comp(0) - b.comp(0), a.comp(1) - b.comp(1),
                       a.comp(2) - b.comp(2));
}
VectorField operator*(double s, const VectorField& a) {
    return VectorField(s * a.comp(0), s * a.comp(1), s * a.comp(2));
}

BoundaryTrace boundary_trace(const VectorField& u) {
    const GridSpec& g = u.grid();
    if (g.face_tag(Face::ZMin) != FaceTag::FlatSigma)
        throw std::invalid_argument("boundary_trace: grid has no FlatSigma face");
    if (g.nz() < 3)
        throw std::invalid_argument("boundary_trace: grid too thin in z");
    BoundaryTrace tr;
    for (SurfaceField* f :
         {&tr.tangential1, &tr.tangential2, &tr.normal, &tr.normal_derivative}) {
        f->nx = g.nx();
        f->ny = g.ny();
        f->hx = g.hx();
        f->hy = g.hy();
        f->values.assign(static_cast<std::size_t>(g.nx()) * g.ny(), 0.0);
    }
    const double inv2h = 1.0 / (2.0 * g.hz());
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            tr.tangential1(i, j) = u.comp(0)(i, j, 0);
            tr.tangential2(i, j) = u.comp(1)(i, j, 0);
            tr.normal(i, j) = u.comp(2)(i, j, 0);
            tr.normal_derivative(i, j) =
                (-3.0 * u.comp(2)(i, j, 0) + 4.0 * u.comp(2)(i, j, 1) -
                 u.comp(2)(i, j, 2)) *
                inv2h;
        }
    return tr;
}

}  // namespace curlheat
