#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace curlheat {

enum class FaceTag { FlatSigma, Outer };

enum Face : int { XMin = 0, XMax = 1, YMin = 2, YMax = 3, ZMin = 4, ZMax = 5 };

/// Uniform node-centered grid on a box whose z=0 face is the flat boundary
/// Sigma. Node (i,j,k) sits at (x0 + i*hx, y0 + j*hy, k*hz); values are
/// stored x-fastest, z-slowest: index = i + nx*(j + ny*k).
class GridSpec {
public:
    GridSpec(std::array<double, 2> x_range, std::array<double, 2> y_range,
             double z_extent, int nx, int ny, int nz);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    std::size_t size() const {
        return static_cast<std::size_t>(nx_) * ny_ * nz_;
    }

    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double hz() const { return hz_; }
    double h_min() const;

    double x0() const { return x_range_[0]; }
    double x1() const { return x_range_[1]; }
    double y0() const { return y_range_[0]; }
    double y1() const { return y_range_[1]; }
    double z1() const { return z_extent_; }

    double x(int i) const { return x_range_[0] + i * hx_; }
    double y(int j) const { return y_range_[0] + j * hy_; }
    double z(int k) const { return k * hz_; }

    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(nx_) *
                   (static_cast<std::size_t>(j) +
                    static_cast<std::size_t>(ny_) * k);
    }

    FaceTag face_tag(Face f) const { return tags_[static_cast<int>(f)]; }
    bool on_sigma(int k) const { return k == 0; }
    bool on_boundary(int i, int j, int k) const {
        return i == 0 || i == nx_ - 1 || j == 0 || j == ny_ - 1 || k == 0 ||
               k == nz_ - 1;
    }
    /// True when every node of a centered radius-1 stencil in each axis is
    /// a grid node, i.e. the node is strictly interior.
    bool interior(int i, int j, int k) const { return !on_boundary(i, j, k); }

    double min_extent() const;

    bool operator==(const GridSpec& o) const;

    std::string describe() const;

private:
    std::array<double, 2> x_range_, y_range_;
    double z_extent_;
    int nx_, ny_, nz_;
    double hx_, hy_, hz_;
    std::array<FaceTag, 6> tags_;
};

/// Convenience: n^3 grid on [-1/2,1/2]^2 x [0,1], the default model domain
/// (origin at the center of Sigma so half-ball masks are origin-centered).
GridSpec default_domain_grid(int n);

/// n^3 grid on [0,1]^3.
GridSpec unit_grid(int n);

}  // namespace curlheat
