#pragma once

// Truncated tensor projection into the C^1 space. On each cell the 1D
// projection matches value and slope at both endpoints and the moments
// against L_0..L_{k-4}; the 2D projection applies the 1D map to both
// factors of the dual data (corner values/derivatives, edge moments,
// interior moments). Shared functionals coincide between neighbors, so the
// assembled field is C^1 and interpolates value and gradient at every node.

#include <memory>

#include <Eigen/Dense>

#include "cpg/fields.hpp"
#include "cpg/spaces.hpp"

namespace cpg {

class Projector1D {
public:
    explicit Projector1D(int k);

    int degree() const { return k_; }
    // (k+1)x(k+1) map from the condition vector
    //   [p(-1), p'(-1), p(1), p'(1), int p L_0, ..., int p L_{k-4}]
    // (reference-coordinate slopes and moments) to coefficients in J_0..J_k.
    const Eigen::MatrixXd& map() const { return map_; }

    // h converts the physical endpoint slopes to reference ones.
    Eigen::VectorXd project(double h, double u_l, double du_l, double u_r, double du_r,
                            const Eigen::VectorXd& moments) const;

private:
    int k_;
    Eigen::MatrixXd map_;
};

// Projection of a smooth field onto the given space; moments use a Gauss
// rule with k+4 points per direction. With a zero-trace target the field
// must vanish on the boundary for the eliminated data to be consistent.
CoefficientField project_field(const SmoothField2D& u, std::shared_ptr<const TrialSpace> space);

}  // namespace cpg
