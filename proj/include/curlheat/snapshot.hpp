#pragma once

#include <string>

#include "curlheat/field.hpp"

namespace curlheat {

/// Field snapshot file: ASCII header
///   "CURLHEAT1 nx ny nz ncomp x0 x1 y0 y1 z0 z1\n"
/// followed by little-endian float64 payload, component-major, then z-major,
/// y, x fastest (one component dump is the ScalarField storage verbatim).
/// Round-trips bit-exactly.
void write_snapshot(const std::string& path, const ScalarField& f);
void write_snapshot(const std::string& path, const VectorField& f);

struct Snapshot {
    GridSpec grid;
    int ncomp;
    std::vector<std::vector<double>> components;

    ScalarField as_scalar() const;
    VectorField as_vector() const;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace curlheat
