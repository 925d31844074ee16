#pragma once

// Tensor-product rectangular meshes. A mesh is two independent 1D
// partitions; elements are their cell products. Perturbed partitions move
// the unit-grid node i/M by eps*(1/M)*sin(i*pi/M)*U_i with U_i uniform in
// (0,1), which keeps the endpoints fixed and the cells strictly increasing
// for any eps < 1/2 (each shift is below eps/M, so a gap keeps at least
// (1-2*eps)/M of its width).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cpg/random.hpp"

namespace cpg {

struct Partition1D {
    std::vector<double> coords;  // strictly increasing, size cells+1

    int cells() const { return static_cast<int>(coords.size()) - 1; }
    double a() const { return coords.front(); }
    double b() const { return coords.back(); }
    double gap(int i) const { return coords[i + 1] - coords[i]; }

    double h_max() const {
        double h = 0.0;
        for (int i = 0; i < cells(); ++i) h = std::max(h, gap(i));
        return h;
    }
    double h_min() const {
        double h = gap(0);
        for (int i = 1; i < cells(); ++i) h = std::min(h, gap(i));
        return h;
    }
};

inline Partition1D uniform_partition(int M, double a, double b) {
    if (M < 1) throw std::invalid_argument("uniform_partition: need at least one cell");
    if (!(a < b)) throw std::invalid_argument("uniform_partition: interval must satisfy a < b");
    Partition1D p;
    p.coords.resize(M + 1);
    for (int i = 0; i <= M; ++i) p.coords[i] = a + (b - a) * (static_cast<double>(i) / M);
    p.coords[0] = a;
    p.coords[M] = b;
    return p;
}

// Cell count and interval are taken from p; node i of the unit grid is
// displaced and mapped affinely onto [a,b]. stream tags the axis so x and y
// draw independent variates from one seed.
inline Partition1D perturb_partition(const Partition1D& p, double eps, std::uint64_t seed,
                                     std::uint64_t stream) {
    if (!(eps >= 0.0 && eps < 0.5))
        throw std::invalid_argument("perturb_partition: eps must lie in [0, 0.5)");
    const int M = p.cells();
    const double a = p.a(), b = p.b();
    Partition1D out;
    out.coords.resize(M + 1);
    out.coords[0] = a;
    out.coords[M] = b;
    const double pi = 3.14159265358979323846;
    for (int i = 1; i < M; ++i) {
        const double u = uniform_open01(seed, stream, static_cast<std::uint64_t>(i));
        const double unit = static_cast<double>(i) / M + eps / M * std::sin(i * pi / M) * u;
        out.coords[i] = a + (b - a) * unit;
    }
    for (int i = 0; i < M; ++i)
        if (!(out.coords[i] < out.coords[i + 1]))
            throw std::logic_error("perturb_partition: coordinates not strictly increasing");
    return out;
}

struct TensorMesh {
    Partition1D px, py;
    double eps = 0.0;          // perturbation amplitude used to build it
    std::uint64_t seed = 0;

    int mx() const { return px.cells(); }
    int my() const { return py.cells(); }
    double h_max() const { return std::max(px.h_max(), py.h_max()); }
    double h_min() const { return std::min(px.h_min(), py.h_min()); }

    struct Box {
        double x0, x1, y0, y1;
        double hx() const { return x1 - x0; }
        double hy() const { return y1 - y0; }
    };
    Box element(int i, int j) const {
        return {px.coords[i], px.coords[i + 1], py.coords[j], py.coords[j + 1]};
    }
};

inline TensorMesh make_mesh(int M, int N, double a, double b, double c, double d, double eps,
                            std::uint64_t seed) {
    TensorMesh mesh;
    mesh.px = perturb_partition(uniform_partition(M, a, b), eps, seed, 0);
    mesh.py = perturb_partition(uniform_partition(N, c, d), eps, seed, 1);
    mesh.eps = eps;
    mesh.seed = seed;
    return mesh;
}

inline double to_reference(double x0, double x1, double x) {
    return (2.0 * x - x0 - x1) / (x1 - x0);
}
inline double from_reference(double x0, double x1, double s) {
    return 0.5 * ((x1 - x0) * s + x0 + x1);
}

// Index of the cell containing x; an interior interface resolves to the
// cell on its right, x = b to the last cell. Points outside [a,b] are
// rejected.
inline int find_cell(const Partition1D& p, double x) {
    if (x < p.a() || x > p.b()) throw std::out_of_range("find_cell: point outside the domain");
    const auto it = std::upper_bound(p.coords.begin(), p.coords.end(), x);
    int i = static_cast<int>(it - p.coords.begin()) - 1;
    return std::clamp(i, 0, p.cells() - 1);
}

}  // namespace cpg
