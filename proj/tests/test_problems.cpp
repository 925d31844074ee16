#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "cpg/problems.hpp"

using namespace cpg;

namespace {

constexpr double kPi = 3.14159265358979323846;

// central differences against the stored analytic derivatives
void check_field_derivatives(const SmoothField2D& f, double x, double y) {
    const double h = 1e-6, tol = 1e-7;
    const auto dx = (f.u(x + h, y) - f.u(x - h, y)) / (2 * h);
    const auto dy = (f.u(x, y + h) - f.u(x, y - h)) / (2 * h);
    const auto dxx = (f.u(x + h, y) - 2 * f.u(x, y) + f.u(x - h, y)) / (h * h);
    const auto dyy = (f.u(x, y + h) - 2 * f.u(x, y) + f.u(x, y - h)) / (h * h);
    const auto dxy = (f.u(x + h, y + h) - f.u(x + h, y - h) - f.u(x - h, y + h) +
                      f.u(x - h, y - h)) /
                     (4 * h * h);
    CHECK(f.ux(x, y) == doctest::Approx(dx).epsilon(tol).scale(1.0));
    CHECK(f.uy(x, y) == doctest::Approx(dy).epsilon(tol).scale(1.0));
    CHECK(f.uxx(x, y) == doctest::Approx(dxx).epsilon(1e-3).scale(1.0));
    CHECK(f.uyy(x, y) == doctest::Approx(dyy).epsilon(1e-3).scale(1.0));
    CHECK(f.uxy(x, y) == doctest::Approx(dxy).epsilon(1e-4).scale(1.0));
}

}  // namespace

TEST_CASE("constant-coefficient variants") {
    struct Row {
        char variant;
        double b, g;
    };
    for (const Row r : {Row{'a', 1, 1}, Row{'b', 0, 1}, Row{'c', 1, 0}, Row{'d', 0, 0}}) {
        const ProblemSpec p = example1(r.variant);
        CHECK(p.constant_coefficients);
        CHECK(p.ax == 0.0);
        CHECK(p.by == 1.0);
        CHECK(p.alpha(0.3, 0.7) == 1.0);
        CHECK(p.alpha_x(0.3, 0.7) == 0.0);
        CHECK(p.alpha_y(0.3, 0.7) == 0.0);
        CHECK(p.beta1(0.3, 0.7) == r.b);
        CHECK(p.beta2(0.3, 0.7) == r.b);
        CHECK(p.div_beta(0.3, 0.7) == 0.0);
        CHECK(p.gamma(0.3, 0.7) == r.g);
        CHECK(validate(p).empty());
    }
    CHECK_THROWS_AS(example1('e'), std::invalid_argument);
}

TEST_CASE("exact solutions vanish on the boundary and differentiate correctly") {
    for (const auto& id : problem_ids()) {
        const ProblemSpec p = make_problem(id);
        for (double r : {0.0, 0.31, 0.77, 1.0}) {
            CHECK(std::abs(p.exact.u(r, 0.0)) <= 1e-15);
            CHECK(std::abs(p.exact.u(r, 1.0)) <= 1e-15);
            CHECK(std::abs(p.exact.u(0.0, r)) <= 1e-15);
            CHECK(std::abs(p.exact.u(1.0, r)) <= 1e-15);
        }
        check_field_derivatives(p.exact, 0.3, 0.4);
        check_field_derivatives(p.exact, 0.82, 0.17);
    }
}

TEST_CASE("forcing composes the strong operator") {
    const double x = 0.3, y = 0.6;
    const double ss = std::sin(kPi * x) * std::sin(kPi * y);
    const double cs = std::cos(kPi * x) * std::sin(kPi * y);
    const double sc = std::sin(kPi * x) * std::cos(kPi * y);

    const auto fa = forcing(example1('a'));
    CHECK(fa(x, y) == doctest::Approx((2 * kPi * kPi + 1) * ss + kPi * cs + kPi * sc)
                          .epsilon(1e-14));
    const auto fb = forcing(example1('b'));
    CHECK(fb(x, y) == doctest::Approx((2 * kPi * kPi + 1) * ss).epsilon(1e-14));
    const auto fd = forcing(example1('d'));
    CHECK(fd(x, y) == doctest::Approx(2 * kPi * kPi * ss).epsilon(1e-14));
}

TEST_CASE("variable-coefficient problem") {
    const ProblemSpec p = example2();
    CHECK_FALSE(p.constant_coefficients);
    const double x = 0.4, y = 0.9;
    CHECK(p.alpha(x, y) == doctest::Approx(std::exp(x * y)).epsilon(1e-15));
    CHECK(p.alpha_x(x, y) == doctest::Approx(y * std::exp(x * y)).epsilon(1e-15));
    CHECK(p.alpha_y(x, y) == doctest::Approx(x * std::exp(x * y)).epsilon(1e-15));
    CHECK(p.beta1(x, y) == doctest::Approx(x * x * y).epsilon(1e-15));
    CHECK(p.beta2(x, y) == doctest::Approx(x * y * y).epsilon(1e-15));
    CHECK(p.div_beta(x, y) == doctest::Approx(4 * x * y).epsilon(1e-15));
    CHECK(p.gamma(x, y) == doctest::Approx(2 * x * y).epsilon(1e-15));

    // X(s) = s(1 - e^{s-1}) factor checks
    const auto X = [](double s) { return s * (1.0 - std::exp(s - 1.0)); };
    CHECK(p.exact.u(x, y) == doctest::Approx(X(x) * X(y)).epsilon(1e-15));
    CHECK(p.exact.u(1.0, 0.5) == 0.0);

    // f at the corner where u and all coefficients except alpha vanish:
    // only -alpha laplacian(u) - grad(alpha).grad(u) could survive, and
    // u_x(1,y) = X'(1) X(y) with X'(1) = -1. At (1,1) every term dies except
    // -alpha(u_xx+u_yy) - alpha_x u_x - alpha_y u_y + beta.grad u:
    const auto f2 = forcing(p);
    const double Xp1 = -1.0;               // X'(1) = 1 - 2 e^0
    const double Xpp1 = -3.0;              // X''(1) = -(2+1) e^0
    const double e1 = std::exp(1.0);
    const double expected11 = -e1 * (Xpp1 * X(1.0) + X(1.0) * Xpp1)  // zero, X(1)=0
                              - e1 * Xp1 * X(1.0) - e1 * X(1.0) * Xp1  // zero
                              + 1.0 * Xp1 * X(1.0) + 1.0 * X(1.0) * Xp1  // zero
                              + 2.0 * X(1.0) * X(1.0);                   // zero
    CHECK(f2(1.0, 1.0) == doctest::Approx(expected11).epsilon(1e-14).scale(1.0));

    // generic point, composed independently from the factor derivatives
    const auto Xp = [](double s) { return 1.0 - (1.0 + s) * std::exp(s - 1.0); };
    const auto Xpp = [](double s) { return -(2.0 + s) * std::exp(s - 1.0); };
    const double a = std::exp(x * y);
    const double fx = -a * (Xpp(x) * X(y) + X(x) * Xpp(y)) -
                      y * a * Xp(x) * X(y) - x * a * X(x) * Xp(y) +
                      x * x * y * Xp(x) * X(y) + x * y * y * X(x) * Xp(y) +
                      2 * x * y * X(x) * X(y);
    CHECK(f2(x, y) == doctest::Approx(fx).epsilon(1e-13).scale(1.0));

    CHECK(validate(p).empty());
}

TEST_CASE("problem ids and lookup") {
    const auto ids = problem_ids();
    REQUIRE(ids.size() == 5);
    CHECK(ids[0] == "ex1a");
    CHECK(ids[4] == "ex2");
    for (const auto& id : ids) CHECK(make_problem(id).name == id);
    CHECK_THROWS_AS(make_problem("ex3"), std::invalid_argument);
    CHECK_THROWS_AS(make_problem(""), std::invalid_argument);
}

TEST_CASE("validate flags coefficient violations") {
    ProblemSpec p = example1('a');
    p.gamma = [](double, double) { return -1.0; };
    p.div_beta = [](double, double) { return 0.0; };
    const auto warnings = validate(p);
    CHECK(!warnings.empty());

    ProblemSpec q = example1('a');
    q.alpha = [](double, double) { return 0.0; };
    CHECK(!validate(q).empty());

    // gamma - div(beta)/2 < 0 with gamma itself fine
    ProblemSpec r = example1('a');
    r.div_beta = [](double, double) { return 10.0; };
    CHECK(!validate(r).empty());
}
