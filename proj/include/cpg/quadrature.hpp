#pragma once

// Gauss-Legendre rules and the per-element point families used by the
// method: interior superconvergence points (roots of J_{k-3}^{2,2}),
// Lobatto points {-1} u {roots of L'_{k-1}} u {+1}, and Gauss points
// (roots of L_{k-1}).
//
// Nodes come from the Golub-Welsch eigenproblem for the monic Jacobi
// recurrence, then two Newton steps sharpen each root to machine precision
// and symmetric sets are symmetrized exactly.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cpg/polynomials.hpp"

namespace cpg {

struct QuadRule {
    std::vector<double> nodes;    // ascending in (-1,1)
    std::vector<double> weights;  // positive, sum = 2
};

namespace detail {

// Roots of the degree-m Jacobi polynomial for the weight (1-s)^a (1+s)^b.
inline std::vector<double> jacobi_poly_roots(double a, double b, int m) {
    if (m == 0) return {};
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
        const double den = (2.0 * j + a + b) * (2.0 * j + a + b + 2.0);
        T(j, j) = (j == 0) ? (b - a) / (a + b + 2.0)
                           : (b * b - a * a) / den;
    }
    for (int j = 1; j < m; ++j) {
        const double num = 4.0 * j * (j + a) * (j + b) * (j + a + b);
        const double den = (2.0 * j + a + b) * (2.0 * j + a + b) *
                           (2.0 * j + a + b + 1.0) * (2.0 * j + a + b - 1.0);
        const double beta = num / den;
        T(j, j - 1) = T(j - 1, j) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    std::vector<double> roots(m);
    for (int i = 0; i < m; ++i) roots[i] = es.eigenvalues()(i);

    for (double& s : roots)
        for (int it = 0; it < 2; ++it) {
            const PolySample p = jacobi(a, b, m, s);
            if (p.d1 != 0.0) s -= p.value / p.d1;
        }

    if (a == b) {  // enforce exact symmetry about 0
        for (int i = 0; i < m / 2; ++i) {
            const double v = 0.5 * (roots[i] - roots[m - 1 - i]);
            roots[i] = v;
            roots[m - 1 - i] = -v;
        }
        if (m % 2 == 1) roots[m / 2] = 0.0;
    }
    return roots;
}

}  // namespace detail

// m-point Gauss-Legendre rule, exact on P_{2m-1}.
inline QuadRule gauss_rule(int m) {
    if (m < 1) throw std::invalid_argument("gauss_rule: need at least one point");
    QuadRule rule;
    rule.nodes = detail::jacobi_poly_roots(0.0, 0.0, m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double s = rule.nodes[i];
        const PolySample p = legendre(m, s);
        rule.weights[i] = 2.0 / ((1.0 - s * s) * p.d1 * p.d1);
    }
    return rule;
}

struct NodeSets {
    std::vector<double> jacobi_roots;  // k-3 points, interior
    std::vector<double> lobatto_pts;   // k   points, includes -1 and +1
    std::vector<double> gauss_pts;     // k-1 points, interior
};

inline NodeSets node_sets(int k) {
    if (k < 3 || k > 8) throw std::invalid_argument("node_sets: degree must be in [3, 8]");
    NodeSets ns;
    ns.jacobi_roots = detail::jacobi_poly_roots(2.0, 2.0, k - 3);
    ns.lobatto_pts.push_back(-1.0);
    for (double s : detail::jacobi_poly_roots(1.0, 1.0, k - 2)) ns.lobatto_pts.push_back(s);
    ns.lobatto_pts.push_back(1.0);
    ns.gauss_pts = detail::jacobi_poly_roots(0.0, 0.0, k - 1);
    return ns;
}

}  // namespace cpg
