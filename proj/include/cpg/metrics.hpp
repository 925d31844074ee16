#pragma once

// Error measures for a computed field against a smooth reference:
//
//   sobolev_errors        broken L2 / H1 / H2 errors by Gauss quadrature
//   node_errors           value and gradient RMS over interior mesh nodes
//   interior_point_errors value errors at the per-element superconvergence
//                         points (k >= 4 only)
//   line_errors           derivative errors along mesh-aligned lines through
//                         the per-element Lobatto and Gauss abscissae
//   rate_table            observed orders between consecutive refinements
//
// The RMS normalizations divide by the cell counts the way the companion
// theory states them, so single-sample-per-cell sets keep a constant error
// at its value while denser samplings average first per line.

#include <optional>
#include <vector>

#include "cpg/fields.hpp"
#include "cpg/spaces.hpp"

namespace cpg {

struct SobolevError {
    double l2 = 0.0, h1 = 0.0, h2 = 0.0;  // h1/h2 are seminorm errors
};

SobolevError sobolev_errors(const CoefficientField&, const SmoothField2D& exact,
                            int quad_points = 0);  // 0 = k+3

// Norms of the difference a - b on the shared space.
SobolevError sobolev_diff(const CoefficientField& a, const CoefficientField& b,
                          int quad_points = 0);

struct NodeErrors {
    std::optional<double> value, gradient;  // absent when the mesh has no interior node
};
NodeErrors node_errors(const CoefficientField&, const SmoothField2D& exact);

struct SuperPointErrors {
    std::optional<double> rms_by_cells;  // sqrt(sum e^2 / (M N)), the stated scaling
    std::optional<double> rms;           // per-sample RMS companion
    std::optional<double> max;
};
SuperPointErrors interior_point_errors(const CoefficientField&, const SmoothField2D& exact);

struct LineErrors {
    double grad_rms = 0.0;  // first derivatives on Lobatto lines of the matching direction
    double lap_rms = 0.0;   // pure second derivatives on Gauss lines
    double grad_max = 0.0;  // max |d/dx| on x-lines + max |d/dy| on y-lines
    double lap_max = 0.0;   // adds the mixed derivative at the Lobatto tensor points
};
LineErrors line_errors(const CoefficientField&, const SmoothField2D& exact,
                       int samples_per_cell = 0);  // 0 = k+1

// One refinement level: h_max plus metric values in a fixed column order
// (absent entries stay absent in the output).
struct LevelValues {
    double h_max = 0.0;
    std::vector<std::optional<double>> values;
};

// orders[r][c] = observed order of column c between levels r and r+1; masked
// (absent) when either value is absent or below the 1e-12 floor. h_max must
// decrease strictly.
std::vector<std::vector<std::optional<double>>> rate_table(const std::vector<LevelValues>&);

// Full per-level report in the order the CSV schema uses.
struct ErrorReport {
    double h_max = 0.0;
    int n_dof = 0;
    double L2 = 0.0, H1 = 0.0, H2 = 0.0;
    std::optional<double> e_un, e_gradn;
    std::optional<double> e_uJ;
    double e_gradl = 0.0, e_lapg = 0.0;
    std::optional<double> e_u_max;
    double e_grad_max = 0.0, e_lap_max = 0.0;
    double sc_L2 = 0.0, sc_H1 = 0.0, sc_H2 = 0.0;
    std::optional<double> e_uJ_rms;  // companion value, not part of the CSV schema
};

}  // namespace cpg
