#pragma once

// Orthogonal polynomial families on [-1,1] evaluated together with their
// first two derivatives:
//
//   legendre(n, s)   Legendre L_n
//   jacobi(r,l,n,s)  classical Jacobi J_n^{r,l}, r,l > -1, J_n^{r,l}(1) = C(n+r,n)
//   gjacobi(n, s)    generalized Jacobi J_n^{-2,-2}; indices 0..3 are the cubic
//                    Hermite shapes, indices >= 4 are (1-s^2)^2 J_{n-4}^{2,2}
//   lobatto(n, s)    phi_{n+1} = integral of L_n; phi'_{n+1} = L_n exactly
//
// All recurrences propagate (value, d1, d2) in lockstep so derivative values
// carry no extra conditioning loss.

#include <stdexcept>

namespace cpg {

struct PolySample {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

inline PolySample legendre(int n, double s) {
    if (n < 0) throw std::invalid_argument("legendre: degree must be >= 0");
    PolySample p0{1.0, 0.0, 0.0};
    if (n == 0) return p0;
    PolySample p1{s, 1.0, 0.0};
    for (int j = 2; j <= n; ++j) {
        const double aj = (2.0 * j - 1.0) / j;
        const double bj = (j - 1.0) / j;
        PolySample p;
        p.value = aj * s * p1.value - bj * p0.value;
        p.d1 = aj * (p1.value + s * p1.d1) - bj * p0.d1;
        p.d2 = aj * (2.0 * p1.d1 + s * p1.d2) - bj * p0.d2;
        p0 = p1;
        p1 = p;
    }
    return p1;
}

inline PolySample jacobi(double r, double l, int n, double s) {
    if (n < 0) throw std::invalid_argument("jacobi: degree must be >= 0");
    if (r <= -1.0 || l <= -1.0)
        throw std::invalid_argument("jacobi: weight exponents must exceed -1 (gjacobi covers (-2,-2))");
    PolySample p0{1.0, 0.0, 0.0};
    if (n == 0) return p0;
    const double d1 = 0.5 * (r + l) + 1.0;
    PolySample p1{0.5 * (r - l) + d1 * s, d1, 0.0};
    for (int j = 2; j <= n; ++j) {
        const double c1 = 2.0 * j * (j + r + l) * (2.0 * j + r + l - 2.0);
        const double c2 = (2.0 * j + r + l - 1.0) * (r * r - l * l);
        const double c3 = (2.0 * j + r + l - 2.0) * (2.0 * j + r + l - 1.0) * (2.0 * j + r + l);
        const double c4 = 2.0 * (j + r - 1.0) * (j + l - 1.0) * (2.0 * j + r + l);
        PolySample p;
        p.value = ((c2 + c3 * s) * p1.value - c4 * p0.value) / c1;
        p.d1 = (c3 * p1.value + (c2 + c3 * s) * p1.d1 - c4 * p0.d1) / c1;
        p.d2 = (2.0 * c3 * p1.d1 + (c2 + c3 * s) * p1.d2 - c4 * p0.d2) / c1;
        p0 = p1;
        p1 = p;
    }
    return p1;
}

// Cubic Hermite shapes on [-1,1], the first four members of the (-2,-2) family:
//   index 0: psi_{-1} = (s+2)(1-s)^2/4   value 1 at s=-1
//   index 1: psi_{ 1} = (2-s)(1+s)^2/4   value 1 at s=+1
//   index 2: chi_{-1} = (s+1)(1-s)^2/4   slope 1 at s=-1
//   index 3: chi_{ 1} = (s-1)(1+s)^2/4   slope 1 at s=+1
inline PolySample gjacobi(int n, double s) {
    if (n < 0) throw std::invalid_argument("gjacobi: degree must be >= 0");
    switch (n) {
    case 0:
        return {0.25 * (s * s * s - 3.0 * s + 2.0), 0.25 * (3.0 * s * s - 3.0), 1.5 * s};
    case 1:
        return {0.25 * (-s * s * s + 3.0 * s + 2.0), 0.25 * (3.0 - 3.0 * s * s), -1.5 * s};
    case 2:
        return {0.25 * (s * s * s - s * s - s + 1.0), 0.25 * (3.0 * s * s - 2.0 * s - 1.0),
                0.25 * (6.0 * s - 2.0)};
    case 3:
        return {0.25 * (s * s * s + s * s - s - 1.0), 0.25 * (3.0 * s * s + 2.0 * s - 1.0),
                0.25 * (6.0 * s + 2.0)};
    default: {
        // (1-s^2)^2 J_{n-4}^{2,2}(s), expanded with the product rule
        const PolySample j = jacobi(2.0, 2.0, n - 4, s);
        const double w = (1.0 - s * s) * (1.0 - s * s);
        const double w1 = -4.0 * s * (1.0 - s * s);
        const double w2 = 12.0 * s * s - 4.0;
        return {w * j.value, w1 * j.value + w * j.d1,
                w2 * j.value + 2.0 * w1 * j.d1 + w * j.d2};
    }
    }
}

inline PolySample lobatto(int n, double s) {
    if (n < 1) throw std::invalid_argument("lobatto: index must be >= 1");
    const PolySample lo = legendre(n - 1, s);
    const PolySample mid = legendre(n, s);
    const PolySample hi = legendre(n + 1, s);
    return {(hi.value - lo.value) / (2.0 * n + 1.0), mid.value, mid.d1};
}

}  // namespace cpg
