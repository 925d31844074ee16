#pragma once

// Assembly of the Petrov-Galerkin system in strong form: no integration by
// parts, the operator is applied to the trial shapes and tested against
// discontinuous Legendre modes,
//
//   A[row, col] = int_elem (-alpha lap(phi) - grad(alpha).grad(phi)
//                           + beta.grad(phi) + gamma phi) L_p(s) L_q(t) dx dy.
//
// Each test row lives on exactly one element, so the matrix is built in
// disjoint per-element row blocks; the element loop runs in parallel and the
// result is identical for any thread count.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cpg/mesh.hpp"
#include "cpg/problems.hpp"
#include "cpg/quadrature.hpp"
#include "cpg/spaces.hpp"

namespace cpg {

struct SparseSystem {
    Eigen::SparseMatrix<double> matrix;  // square, test rows x trial columns
    Eigen::VectorXd rhs;
};

// Reference-shape element block of element (i,j): rows are the (k-1)^2 test
// modes, columns the (k+1)^2 tensor shapes J_a(s) J_b(t) without the
// derivative-dof scaling (assemble applies that when scattering). The rule
// must have at least k+1 points per direction.
Eigen::MatrixXd element_matrix(const TensorMesh& mesh, int i, int j, const ProblemSpec& problem,
                               int k, const QuadRule& quad);

// k+1 points integrate the constant-coefficient blocks exactly; variable
// coefficients get a small elevation by default.
int default_quad_points(const ProblemSpec&, int k);

SparseSystem assemble(const TrialSpace& space, const ProblemSpec& problem, const QuadRule& quad);
SparseSystem assemble(const TrialSpace& space, const ProblemSpec& problem, int quad_points = 0);

// max_i |A c - rhs|_i / (1 + max_i |rhs|_i)
double residual_check(const SparseSystem&, const Eigen::VectorXd& coeffs);

}  // namespace cpg
