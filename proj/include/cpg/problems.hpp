#pragma once

// Convection-diffusion model problems on a rectangle with homogeneous
// Dirichlet data:
//
//   -div(alpha grad u) + beta . grad u + gamma u = f,   u = 0 on the boundary.
//
// A ProblemSpec carries the coefficients with the derivatives the strong
// form needs, plus a manufactured exact solution; forcing() composes f from
// them. The built-in problems:
//
//   ex1a..ex1d  u = sin(pi x) sin(pi y) on (0,1)^2 with constant
//               coefficients: (beta, gamma) = (1,1)/( 0,1)/(1,0)/(0,0)
//   ex2         variable coefficients alpha = e^{xy}, beta = (x^2 y, x y^2),
//               gamma = 2xy and u = x(1-e^{x-1}) y(1-e^{y-1}) on (0,1)^2

#include <functional>
#include <string>
#include <vector>

#include "cpg/fields.hpp"

namespace cpg {

struct ProblemSpec {
    std::string name;
    double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;

    std::function<double(double, double)> alpha;
    std::function<double(double, double)> alpha_x, alpha_y;
    std::function<double(double, double)> beta1, beta2;
    std::function<double(double, double)> div_beta;
    std::function<double(double, double)> gamma;
    bool constant_coefficients = false;

    SmoothField2D exact;
};

// f = -alpha (u_xx + u_yy) - grad(alpha) . grad(u) + beta . grad(u) + gamma u
std::function<double(double, double)> forcing(const ProblemSpec&);

ProblemSpec example1(char variant);  // 'a'..'d'
ProblemSpec example2();
ProblemSpec make_problem(const std::string& id);  // "ex1a".."ex1d", "ex2"
std::vector<std::string> problem_ids();

// Samples the coefficient conditions (alpha bounded below by a positive
// constant, gamma >= 0, gamma - div(beta)/2 >= 0) on a grid; violations come
// back as warnings, not errors.
std::vector<std::string> validate(const ProblemSpec&, int samples_per_direction = 20);

}  // namespace cpg
