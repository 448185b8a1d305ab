#include "curlheat/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is little-endian; byteswap not implemented");

namespace curlheat {

namespace {

std::string header_line(const GridSpec& g, int ncomp) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "CURLHEAT1 %d %d %d %d %.17g %.17g %.17g %.17g %.17g %.17g\n",
                  g.nx(), g.ny(), g.nz(), ncomp, g.x0(), g.x1(), g.y0(),
                  g.y1(), 0.0, g.z1());
    return buf;
}

void write_impl(const std::string& path, const GridSpec& g, int ncomp,
                const std::vector<const std::vector<double>*>& comps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    const std::string hdr = header_line(g, ncomp);
    out.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
    for (const auto* c : comps)
        out.write(reinterpret_cast<const char*>(c->data()),
                  static_cast<std::streamsize>(c->size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot: write failed " + path);
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    write_impl(path, f.grid(), 1, {&f.values()});
}

void write_snapshot(const std::string& path, const VectorField& f) {
    write_impl(path, f.grid(), 3,
               {&f.comp(0).values(), &f.comp(1).values(), &f.comp(2).values()});
}

ScalarField Snapshot::as_scalar() const {
    if (ncomp != 1) throw std::runtime_error("Snapshot: not a scalar snapshot");
    return ScalarField(grid, components[0]);
}

VectorField Snapshot::as_vector() const {
    if (ncomp != 3) throw std::runtime_error("Snapshot: not a vector snapshot");
    return VectorField(ScalarField(grid, components[0]),
                       ScalarField(grid, components[1]),
                       ScalarField(grid, components[2]));
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_snapshot: missing header in " + path);
    std::istringstream hs(line);
    std::string magic;
    int nx, ny, nz, ncomp;
    double x0, x1, y0, y1, z0, z1;
    if (!(hs >> magic >> nx >> ny >> nz >> ncomp >> x0 >> x1 >> y0 >> y1 >>
          z0 >> z1) ||
        magic != "CURLHEAT1")
        throw std::runtime_error("read_snapshot: bad header in " + path);
    if (z0 != 0.0)
        throw std::runtime_error("read_snapshot: z0 must be 0 in " + path);
    GridSpec grid({x0, x1}, {y0, y1}, z1, nx, ny, nz);
    Snapshot snap{grid, ncomp, {}};
    snap.components.resize(ncomp);
    for (int c = 0; c < ncomp; ++c) {
        snap.components[c].resize(grid.size());
        in.read(reinterpret_cast<char*>(snap.components[c].data()),
                static_cast<std::streamsize>(grid.size() * sizeof(double)));
        if (in.gcount() !=
            static_cast<std::streamsize>(grid.size() * sizeof(double)))
            throw std::runtime_error("read_snapshot: truncated payload in " +
                                     path);
    }
    return snap;
}

}  // namespace curlheat
