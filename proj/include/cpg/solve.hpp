#pragma once

// Direct sparse solve of the (nonsymmetric) Petrov-Galerkin system.

#include <stdexcept>

#include <Eigen/Dense>

#include "cpg/assembly.hpp"

namespace cpg {

struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse LU with column reordering; iterative refinement until the scaled
// residual of residual_check() is at most 1e-10. A failed factorization
// throws SingularSystemError.
Eigen::VectorXd solve_linear(const SparseSystem&);

}  // namespace cpg
