#include "cpg/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "cpg/parallel.hpp"
#include "cpg/quadrature.hpp"

namespace cpg {

namespace {

constexpr double kRateFloor = 1e-12;

struct Accum3 {
    double a = 0.0, b = 0.0, c = 0.0;
};

// Quadrature of the squared error triples over every element; `diff`
// supplies the pointwise error derivatives.
template <class Diff>
SobolevError integrate_error(const TrialSpace& space, int quad_points, const Diff& diff) {
    const TensorMesh& mesh = space.mesh();
    const int M = mesh.mx(), N = mesh.my();
    const QuadRule quad = gauss_rule(quad_points);
    const int m = static_cast<int>(quad.nodes.size());

    std::vector<Accum3> partial(M * N);
    parallel_for(M * N, [&](int e) {
        const int i = e / N, j = e % N;
        const auto box = mesh.element(i, j);
        Accum3 acc;
        for (int gx = 0; gx < m; ++gx)
            for (int gy = 0; gy < m; ++gy) {
                const double w =
                    quad.weights[gx] * quad.weights[gy] * box.hx() * box.hy() / 4.0;
                const LocalField::Derivs d = diff(i, j, e, quad.nodes[gx], quad.nodes[gy]);
                acc.a += w * d.v * d.v;
                acc.b += w * (d.dx * d.dx + d.dy * d.dy);
                acc.c += w * (d.dxx * d.dxx + 2.0 * d.dxy * d.dxy + d.dyy * d.dyy);
            }
        partial[e] = acc;
    });
    Accum3 total;
    for (const Accum3& p : partial) {
        total.a += p.a;
        total.b += p.b;
        total.c += p.c;
    }
    return {std::sqrt(total.a), std::sqrt(total.b), std::sqrt(total.c)};
}

}  // namespace

SobolevError sobolev_errors(const CoefficientField& field, const SmoothField2D& exact,
                            int quad_points) {
    const TrialSpace& space = field.space();
    const int m = quad_points > 0 ? quad_points : space.degree() + 3;
    const TensorMesh& mesh = space.mesh();
    const int N = mesh.my();
    std::vector<LocalField> locals(mesh.mx() * N);
    for (int e = 0; e < mesh.mx() * N; ++e) locals[e] = field.local(e / N, e % N);
    return integrate_error(space, m, [&](int i, int j, int e, double s, double t) {
        const auto box = mesh.element(i, j);
        const double x = from_reference(box.x0, box.x1, s);
        const double y = from_reference(box.y0, box.y1, t);
        LocalField::Derivs d = locals[e].eval_all(s, t);
        d.v -= exact.u(x, y);
        d.dx -= exact.ux(x, y);
        d.dy -= exact.uy(x, y);
        d.dxx -= exact.uxx(x, y);
        d.dyy -= exact.uyy(x, y);
        d.dxy -= exact.uxy(x, y);
        return d;
    });
}

SobolevError sobolev_diff(const CoefficientField& a, const CoefficientField& b, int quad_points) {
    if (&a.space() != &b.space() && a.space().dim() != b.space().dim())
        throw std::invalid_argument("sobolev_diff: fields live on different spaces");
    const CoefficientField diff(a.space_ptr(), a.values() - b.values());
    const TrialSpace& space = a.space();
    const int m = quad_points > 0 ? quad_points : space.degree() + 3;
    const int N = space.mesh().my();
    std::vector<LocalField> locals(space.mesh().mx() * N);
    for (int e = 0; e < space.mesh().mx() * N; ++e) locals[e] = diff.local(e / N, e % N);
    return integrate_error(space, m,
                           [&](int, int, int e, double s, double t) { return locals[e].eval_all(s, t); });
}

NodeErrors node_errors(const CoefficientField& field, const SmoothField2D& exact) {
    const TensorMesh& mesh = field.space().mesh();
    const int M = mesh.mx(), N = mesh.my();
    if (M < 2 || N < 2) return {};
    double sum_v = 0.0, sum_g = 0.0;
    for (int i = 1; i < M; ++i)
        for (int j = 1; j < N; ++j) {
            // the node is the lower-left corner of element (i, j)
            const LocalField lf = field.local(i, j);
            const LocalField::Derivs d = lf.eval_all(-1.0, -1.0);
            const double x = mesh.px.coords[i], y = mesh.py.coords[j];
            const double ev = d.v - exact.u(x, y);
            const double ex = d.dx - exact.ux(x, y);
            const double ey = d.dy - exact.uy(x, y);
            sum_v += ev * ev;
            sum_g += ex * ex + ey * ey;
        }
    const double scale = static_cast<double>(M) * N;
    return {std::sqrt(sum_v / scale), std::sqrt(sum_g / scale)};
}

SuperPointErrors interior_point_errors(const CoefficientField& field, const SmoothField2D& exact) {
    const TrialSpace& space = field.space();
    const int k = space.degree();
    if (k < 4) return {};
    const std::vector<double> pts = node_sets(k).jacobi_roots;
    const int np = static_cast<int>(pts.size());
    const TensorMesh& mesh = space.mesh();
    const int M = mesh.mx(), N = mesh.my();

    std::vector<double> sums(M * N, 0.0), maxs(M * N, 0.0);
    parallel_for(M * N, [&](int e) {
        const int i = e / N, j = e % N;
        const auto box = mesh.element(i, j);
        const LocalField lf = field.local(i, j);
        double sum = 0.0, mx = 0.0;
        for (int p = 0; p < np; ++p)
            for (int q = 0; q < np; ++q) {
                const double x = from_reference(box.x0, box.x1, pts[p]);
                const double y = from_reference(box.y0, box.y1, pts[q]);
                const double err = lf.eval(pts[p], pts[q], 0, 0) - exact.u(x, y);
                sum += err * err;
                mx = std::max(mx, std::abs(err));
            }
        sums[e] = sum;
        maxs[e] = mx;
    });
    double total = 0.0, mx = 0.0;
    for (int e = 0; e < M * N; ++e) {
        total += sums[e];
        mx = std::max(mx, maxs[e]);
    }
    const double cells = static_cast<double>(M) * N;
    return {std::sqrt(total / cells), std::sqrt(total / (cells * np * np)), mx};
}

LineErrors line_errors(const CoefficientField& field, const SmoothField2D& exact,
                       int samples_per_cell) {
    const TrialSpace& space = field.space();
    const int k = space.degree();
    const int spc = samples_per_cell > 0 ? samples_per_cell : k + 1;
    const NodeSets ns = node_sets(k);
    const std::vector<double>& lob = ns.lobatto_pts;   // k points
    const std::vector<double>& gau = ns.gauss_pts;     // k-1 points
    const QuadRule srule = gauss_rule(spc);
    const TensorMesh& mesh = space.mesh();
    const int M = mesh.mx(), N = mesh.my();
    const int nl = static_cast<int>(lob.size()), ng = static_cast<int>(gau.size());

    // per-element partial sums: squares grouped by the line each sample
    // belongs to, plus elementwise maxima
    std::vector<double> sq_dx(M * N * nl, 0.0), sq_dy(M * N * nl, 0.0);
    std::vector<double> sq_dxx(M * N * ng, 0.0), sq_dyy(M * N * ng, 0.0);
    std::vector<double> mx_dx(M * N, 0.0), mx_dy(M * N, 0.0);
    std::vector<double> mx_dxx(M * N, 0.0), mx_dyy(M * N, 0.0), mx_dxy(M * N, 0.0);

    parallel_for(M * N, [&](int e) {
        const int i = e / N, j = e % N;
        const auto box = mesh.element(i, j);
        const LocalField lf = field.local(i, j);
        for (int p = 0; p < nl; ++p) {
            const double x = from_reference(box.x0, box.x1, lob[p]);
            for (int g = 0; g < spc; ++g) {
                const double y = from_reference(box.y0, box.y1, srule.nodes[g]);
                const double err = lf.eval(lob[p], srule.nodes[g], 1, 0) - exact.ux(x, y);
                sq_dx[e * nl + p] += err * err;
                mx_dx[e] = std::max(mx_dx[e], std::abs(err));
            }
        }
        for (int p = 0; p < nl; ++p) {
            const double y = from_reference(box.y0, box.y1, lob[p]);
            for (int g = 0; g < spc; ++g) {
                const double x = from_reference(box.x0, box.x1, srule.nodes[g]);
                const double err = lf.eval(srule.nodes[g], lob[p], 0, 1) - exact.uy(x, y);
                sq_dy[e * nl + p] += err * err;
                mx_dy[e] = std::max(mx_dy[e], std::abs(err));
            }
        }
        for (int p = 0; p < ng; ++p) {
            const double x = from_reference(box.x0, box.x1, gau[p]);
            for (int g = 0; g < spc; ++g) {
                const double y = from_reference(box.y0, box.y1, srule.nodes[g]);
                const double err = lf.eval(gau[p], srule.nodes[g], 2, 0) - exact.uxx(x, y);
                sq_dxx[e * ng + p] += err * err;
                mx_dxx[e] = std::max(mx_dxx[e], std::abs(err));
            }
        }
        for (int p = 0; p < ng; ++p) {
            const double y = from_reference(box.y0, box.y1, gau[p]);
            for (int g = 0; g < spc; ++g) {
                const double x = from_reference(box.x0, box.x1, srule.nodes[g]);
                const double err = lf.eval(srule.nodes[g], gau[p], 0, 2) - exact.uyy(x, y);
                sq_dyy[e * ng + p] += err * err;
                mx_dyy[e] = std::max(mx_dyy[e], std::abs(err));
            }
        }
        for (int p = 0; p < nl; ++p)
            for (int q = 0; q < nl; ++q) {
                const double x = from_reference(box.x0, box.x1, lob[p]);
                const double y = from_reference(box.y0, box.y1, lob[q]);
                const double err = lf.eval(lob[p], lob[q], 1, 1) - exact.uxy(x, y);
                mx_dxy[e] = std::max(mx_dxy[e], std::abs(err));
            }
    });

    // Lines in x are indexed by (x-cell, point); their samples spread over
    // every y-cell. Mean over a line = sum / (transverse cells * spc).
    const auto line_mean_sum = [&](const std::vector<double>& sq, int npts, bool x_lines) {
        double acc = 0.0;
        const int lines_major = x_lines ? M : N;
        const int transverse = x_lines ? N : M;
        for (int a = 0; a < lines_major; ++a)
            for (int p = 0; p < npts; ++p) {
                double line_sum = 0.0;
                for (int b = 0; b < transverse; ++b) {
                    const int e = x_lines ? a * N + b : b * N + a;
                    line_sum += sq[e * npts + p];
                }
                acc += line_sum / (static_cast<double>(transverse) * spc);
            }
        return acc / (static_cast<double>(lines_major) * npts);
    };

    LineErrors out;
    out.grad_rms = std::sqrt(line_mean_sum(sq_dx, nl, true) + line_mean_sum(sq_dy, nl, false));
    out.lap_rms = std::sqrt(line_mean_sum(sq_dxx, ng, true) + line_mean_sum(sq_dyy, ng, false));
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, f = 0.0;
    for (int e = 0; e < M * N; ++e) {
        a = std::max(a, mx_dx[e]);
        b = std::max(b, mx_dy[e]);
        c = std::max(c, mx_dxx[e]);
        d = std::max(d, mx_dyy[e]);
        f = std::max(f, mx_dxy[e]);
    }
    out.grad_max = a + b;
    out.lap_max = c + d + f;
    return out;
}

std::vector<std::vector<std::optional<double>>> rate_table(const std::vector<LevelValues>& levels) {
    std::vector<std::vector<std::optional<double>>> orders;
    if (levels.size() < 2) return orders;
    const std::size_t ncol = levels.front().values.size();
    for (std::size_t r = 1; r < levels.size(); ++r) {
        if (levels[r].values.size() != ncol)
            throw std::invalid_argument("rate_table: rows have different column counts");
        if (!(levels[r].h_max < levels[r - 1].h_max))
            throw std::invalid_argument("rate_table: h_max must decrease strictly");
        std::vector<std::optional<double>> row(ncol);
        const double hr = std::log(levels[r - 1].h_max / levels[r].h_max);
        for (std::size_t c = 0; c < ncol; ++c) {
            const auto& ep = levels[r - 1].values[c];
            const auto& ec = levels[r].values[c];
            if (ep && ec && *ep >= kRateFloor && *ec >= kRateFloor)
                row[c] = std::log(*ep / *ec) / hr;
        }
        orders.push_back(std::move(row));
    }
    return orders;
}

}  // namespace cpg
