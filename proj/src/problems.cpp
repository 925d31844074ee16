#include "cpg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace cpg {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::function<double(double, double)> constant(double c) {
    return [c](double, double) { return c; };
}
}  // namespace

std::function<double(double, double)> forcing(const ProblemSpec& p) {
    return [p](double x, double y) {
        const double lap = p.exact.uxx(x, y) + p.exact.uyy(x, y);
        const double gx = p.exact.ux(x, y), gy = p.exact.uy(x, y);
        return -p.alpha(x, y) * lap - p.alpha_x(x, y) * gx - p.alpha_y(x, y) * gy +
               p.beta1(x, y) * gx + p.beta2(x, y) * gy + p.gamma(x, y) * p.exact.u(x, y);
    };
}

ProblemSpec example1(char variant) {
    double b = 0.0, g = 0.0;
    switch (variant) {
    case 'a': b = 1.0; g = 1.0; break;
    case 'b': b = 0.0; g = 1.0; break;
    case 'c': b = 1.0; g = 0.0; break;
    case 'd': b = 0.0; g = 0.0; break;
    default: throw std::invalid_argument("example1: variant must be 'a'..'d'");
    }
    ProblemSpec p;
    p.name = std::string("ex1") + variant;
    p.alpha = constant(1.0);
    p.alpha_x = constant(0.0);
    p.alpha_y = constant(0.0);
    p.beta1 = constant(b);
    p.beta2 = constant(b);
    p.div_beta = constant(0.0);
    p.gamma = constant(g);
    p.constant_coefficients = true;
    p.exact.u = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    p.exact.ux = [](double x, double y) { return kPi * std::cos(kPi * x) * std::sin(kPi * y); };
    p.exact.uy = [](double x, double y) { return kPi * std::sin(kPi * x) * std::cos(kPi * y); };
    p.exact.uxx = [](double x, double y) {
        return -kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    p.exact.uyy = [](double x, double y) {
        return -kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    p.exact.uxy = [](double x, double y) {
        return kPi * kPi * std::cos(kPi * x) * std::cos(kPi * y);
    };
    return p;
}

ProblemSpec example2() {
    // One factor of the exact solution and its derivatives:
    // X(s) = s (1 - e^{s-1}), X' = 1 - (1+s) e^{s-1},X'' = -(2+s) e^{s-1}
    auto X = [](double s) { return s * (1.0 - std::exp(s - 1.0)); };
    auto X1 = [](double s) { return 1.0 - (1.0 + s) * std::exp(s - 1.0); };
    auto X2 = [](double s) { return -(2.0 + s) * std::exp(s - 1.0); };

    ProblemSpec p;
    p.name = "ex2";
    p.alpha = [](double x, double y) { return std::exp(x * y); };
    p.alpha_x = [](double x, double y) { return y * std::exp(x * y); };
    p.alpha_y = [](double x, double y) { return x * std::exp(x * y); };
    p.beta1 = [](double x, double y) { return x * x * y; };
    p.beta2 = [](double x, double y) { return x * y * y; };
    p.div_beta = [](double x, double y) { return 4.0 * x * y; };
    p.gamma = [](double x, double y) { return 2.0 * x * y; };
    p.constant_coefficients = false;
    p.exact.u = [X](double x, double y) { return X(x) * X(y); };
    p.exact.ux = [X, X1](double x, double y) { return X1(x) * X(y); };
    p.exact.uy = [X, X1](double x, double y) { return X(x) * X1(y); };
    p.exact.uxx = [X, X2](double x, double y) { return X2(x) * X(y); };
    p.exact.uyy = [X, X2](double x, double y) { return X(x) * X2(y); };
    p.exact.uxy = [X1](double x, double y) { return X1(x) * X1(y); };
    return p;
}

ProblemSpec make_problem(const std::string& id) {
    if (id.size() == 4 && id.compare(0, 3, "ex1") == 0 && id[3] >= 'a' && id[3] <= 'd')
        return example1(id[3]);
    if (id == "ex2") return example2();
    throw std::invalid_argument("make_problem: unknown problem id '" + id +
                                "' (expected ex1a..ex1d or ex2)");
}

std::vector<std::string> problem_ids() { return {"ex1a", "ex1b", "ex1c", "ex1d", "ex2"}; }

std::vector<std::string> validate(const ProblemSpec& p, int n) {
    std::vector<std::string> warnings;
    double alpha_min = 1e300, gamma_min = 1e300, disc_min = 1e300;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = p.ax + (p.bx - p.ax) * (i + 0.5) / n;
            const double y = p.ay + (p.by - p.ay) * (j + 0.5) / n;
            alpha_min = std::min(alpha_min, p.alpha(x, y));
            gamma_min = std::min(gamma_min, p.gamma(x, y));
            disc_min = std::min(disc_min, p.gamma(x, y) - 0.5 * p.div_beta(x, y));
        }
    if (!(alpha_min > 0.0))
        warnings.push_back("diffusion coefficient is not positive on the sample grid (min " +
                           std::to_string(alpha_min) + ")");
    if (gamma_min < -1e-12)
        warnings.push_back("reaction coefficient is negative on the sample grid (min " +
                           std::to_string(gamma_min) + ")");
    if (disc_min < -1e-12)
        warnings.push_back("gamma - div(beta)/2 is negative on the sample grid (min " +
                           std::to_string(disc_min) + "); coercivity is not guaranteed");
    return warnings;
}

}  // namespace cpg
