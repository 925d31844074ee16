#include "cpg/solve.hpp"

#include <Eigen/SparseLU>

namespace cpg {

Eigen::VectorXd solve_linear(const SparseSystem& sys) {
    if (sys.matrix.rows() != sys.matrix.cols())
        throw std::invalid_argument("solve_linear: system is not square");
    if (sys.matrix.rows() != sys.rhs.size())
        throw std::invalid_argument("solve_linear: right-hand side size mismatch");

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(sys.matrix);
    if (lu.info() != Eigen::Success)
        throw SingularSystemError("solve_linear: LU factorization failed; the system is singular");

    Eigen::VectorXd x = lu.solve(sys.rhs);
    constexpr double tol = 1e-10;
    for (int pass = 0; pass < 2 && residual_check(sys, x) > tol; ++pass)
        x += lu.solve(sys.rhs - sys.matrix * x);
    if (residual_check(sys, x) > tol)
        throw std::runtime_error("solve_linear: scaled residual above 1e-10 after refinement");
    return x;
}

}  // namespace cpg
