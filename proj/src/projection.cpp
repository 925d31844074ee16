#include "cpg/projection.hpp"

#include <stdexcept>
#include <vector>

#include "cpg/parallel.hpp"
#include "cpg/quadrature.hpp"

namespace cpg {

Projector1D::Projector1D(int k) : k_(k) {
    if (k < 3 || k > 8) throw std::invalid_argument("Projector1D: degree must be in [3, 8]");
    const int n = k + 1, nb = k - 3;

    // The endpoint rows are exact by the Kronecker structure of the family:
    // c_0 = p(-1), c_1 = p(1), c_2 = p'(-1), c_3 = p'(1).
    map_ = Eigen::MatrixXd::Zero(n, n);
    map_(0, 0) = 1.0;
    map_(1, 2) = 1.0;
    map_(2, 1) = 1.0;
    map_(3, 3) = 1.0;
    if (nb == 0) return;

    // Bubble coefficients solve the moment equations after removing the
    // Hermite part: G c_bub = m - GH [c_0..c_3].
    const QuadRule quad = gauss_rule(k + 1);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::MatrixXd GH = Eigen::MatrixXd::Zero(nb, 4);
    for (int q = 0; q < nb; ++q)
        for (std::size_t g = 0; g < quad.nodes.size(); ++g) {
            const double s = quad.nodes[g];
            const double w = quad.weights[g] * legendre(q, s).value;
            for (int j = 0; j < nb; ++j) G(q, j) += w * gjacobi(4 + j, s).value;
            for (int j = 0; j < 4; ++j) GH(q, j) += w * gjacobi(j, s).value;
        }
    const Eigen::MatrixXd Ginv = G.inverse();
    const Eigen::MatrixXd corr = -Ginv * GH;  // columns follow J_0..J_3
    for (int i = 0; i < nb; ++i) {
        // reorder into condition order [p(-1), p'(-1), p(1), p'(1)]
        map_(4 + i, 0) = corr(i, 0);
        map_(4 + i, 2) = corr(i, 1);
        map_(4 + i, 1) = corr(i, 2);
        map_(4 + i, 3) = corr(i, 3);
        for (int q = 0; q < nb; ++q) map_(4 + i, 4 + q) = Ginv(i, q);
    }
}

Eigen::VectorXd Projector1D::project(double h, double u_l, double du_l, double u_r, double du_r,
                                     const Eigen::VectorXd& moments) const {
    if (moments.size() != k_ - 3)
        throw std::invalid_argument("Projector1D: expected k-3 moment values");
    Eigen::VectorXd cond(k_ + 1);
    cond(0) = u_l;
    cond(1) = 0.5 * h * du_l;
    cond(2) = u_r;
    cond(3) = 0.5 * h * du_r;
    cond.tail(k_ - 3) = moments;
    return map_ * cond;
}

CoefficientField project_field(const SmoothField2D& u, std::shared_ptr<const TrialSpace> space) {
    const int k = space->degree();
    const TensorMesh& mesh = space->mesh();
    const int M = mesh.mx(), N = mesh.my();
    const int n = k + 1, nb = k - 3;

    const Projector1D proj(k);
    const Eigen::MatrixXd& T = proj.map();
    const QuadRule quad = gauss_rule(k + 4);
    const int m = static_cast<int>(quad.nodes.size());

    // moment weights w_g L_q(s_g)
    Eigen::MatrixXd momw(nb, m);
    for (int q = 0; q < nb; ++q)
        for (int g = 0; g < m; ++g) momw(q, g) = quad.weights[g] * legendre(q, quad.nodes[g]).value;

    CoefficientField field(space);
    Eigen::VectorXd& values = field.values();

    // Shared dofs would be written with the same numbers by every adjacent
    // element; restricting each direction to the owner (the cell left of the
    // node, or the last cell for the right boundary node) keeps the parallel
    // writes disjoint.
    const auto owns = [](int a, int cell, int cells) {
        return a == 0 || a == 2 || a >= 4 || cell == cells - 1;
    };

    parallel_for(M * N, [&](int e) {
        const int i = e / N, j = e % N;
        const auto box = mesh.element(i, j);
        const double sx = 0.5 * box.hx(), sy = 0.5 * box.hy();
        const double xc[2] = {box.x0, box.x1};
        const double yc[2] = {box.y0, box.y1};

        // Dual data F(a,b): x-conditions [u(x0), sx ux(x0), u(x1), sx ux(x1),
        // moments] against the same in y. Slot a/2 picks the endpoint, a%2
        // the derivative.
        Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const double x = xc[a / 2], y = yc[b / 2];
                const bool da = (a % 2 == 1), db = (b % 2 == 1);
                const double v = da ? (db ? sx * sy * u.uxy(x, y) : sx * u.ux(x, y))
                                    : (db ? sy * u.uy(x, y) : u.u(x, y));
                F(a, b) = v;
            }
        for (int g = 0; g < m && nb > 0; ++g) {  // edges x = const
            const double y = from_reference(box.y0, box.y1, quad.nodes[g]);
            for (int a = 0; a < 4; ++a) {
                const double x = xc[a / 2];
                const double v = (a % 2 == 1) ? sx * u.ux(x, y) : u.u(x, y);
                for (int q = 0; q < nb; ++q) F(a, 4 + q) += momw(q, g) * v;
            }
        }
        for (int g = 0; g < m && nb > 0; ++g) {  // edges y = const
            const double x = from_reference(box.x0, box.x1, quad.nodes[g]);
            for (int b = 0; b < 4; ++b) {
                const double y = yc[b / 2];
                const double v = (b % 2 == 1) ? sy * u.uy(x, y) : u.u(x, y);
                for (int q = 0; q < nb; ++q) F(4 + q, b) += momw(q, g) * v;
            }
        }
        for (int gx = 0; gx < m && nb > 0; ++gx) {  // interior
            const double x = from_reference(box.x0, box.x1, quad.nodes[gx]);
            for (int gy = 0; gy < m; ++gy) {
                const double y = from_reference(box.y0, box.y1, quad.nodes[gy]);
                const double v = u.u(x, y);
                for (int p = 0; p < nb; ++p)
                    for (int q = 0; q < nb; ++q) F(4 + p, 4 + q) += momw(p, gx) * momw(q, gy) * v;
            }
        }

        // coefficients of J_a(s) J_b(t)
        const Eigen::MatrixXd U = T * F * T.transpose();

        for (int a = 0; a <= k; ++a) {
            if (!owns(a, i, M)) continue;
            const auto lx = space->dofx().local(i, a, box.hx());
            if (lx.global < 0) continue;
            for (int b = 0; b <= k; ++b) {
                if (!owns(b, j, N)) continue;
                const auto ly = space->dofy().local(j, b, box.hy());
                if (ly.global < 0) continue;
                values(space->global_index(lx.global, ly.global)) =
                    U(a, b) / (lx.scale * ly.scale);
            }
        }
    });

    return field;
}

}  // namespace cpg
