#include "curlheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace curlheat {

GridSpec::GridSpec(std::array<double, 2> x_range,
                   std::array<double, 2> y_range, double z_extent, int nx,
                   int ny, int nz)
    : x_range_(x_range),
      y_range_(y_range),
      z_extent_(z_extent),
      nx_(nx),
      ny_(ny),
      nz_(nz) {
    if (nx < 4 || ny < 4 || nz < 4)
        throw std::invalid_argument(
            "GridSpec: counts must be >= 4 per axis (second-order stencils)");
    if (!(x_range[1] > x_range[0]) || !(y_range[1] > y_range[0]) ||
        !(z_extent > 0.0))
        throw std::invalid_argument("GridSpec: empty extent");
    if (!std::isfinite(x_range[0]) || !std::isfinite(x_range[1]) ||
        !std::isfinite(y_range[0]) || !std::isfinite(y_range[1]) ||
        !std::isfinite(z_extent))
        throw std::invalid_argument("GridSpec: non-finite extent");
    hx_ = (x_range[1] - x_range[0]) / (nx - 1);
    hy_ = (y_range[1] - y_range[0]) / (ny - 1);
    hz_ = z_extent / (nz - 1);
    // z=0 is the flat boundary Sigma; every other face is Outer.
    tags_ = {FaceTag::Outer, FaceTag::Outer, FaceTag::Outer,
             FaceTag::Outer, FaceTag::FlatSigma, FaceTag::Outer};
}

double GridSpec::h_min() const { return std::min({hx_, hy_, hz_}); }

double GridSpec::min_extent() const {
    return std::min({x_range_[1] - x_range_[0], y_range_[1] - y_range_[0],
                     z_extent_});
}

bool GridSpec::operator==(const GridSpec& o) const {
    return x_range_ == o.x_range_ && y_range_ == o.y_range_ &&
           z_extent_ == o.z_extent_ && nx_ == o.nx_ && ny_ == o.ny_ &&
           nz_ == o.nz_;
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << nx_ << "x" << ny_ << "x" << nz_ << " on [" << x_range_[0] << ","
       << x_range_[1] << "]x[" << y_range_[0] << "," << y_range_[1] << "]x[0,"
       << z_extent_ << "]";
    return os.str();
}

GridSpec default_domain_grid(int n) {
    return GridSpec({-0.5, 0.5}, {-0.5, 0.5}, 1.0, n, n, n);
}

GridSpec unit_grid(int n) { return GridSpec({0.0, 1.0}, {0.0, 1.0}, 1.0, n, n, n); }

}  // namespace curlheat
