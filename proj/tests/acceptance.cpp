// End-to-end acceptance battery. Each criterion prints one PASS/FAIL line
// (informational detail lines are indented); the exit code is the number of
// failed criteria. Order bands are pinned here, next to the checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpg/assembly.hpp"
#include "cpg/metrics.hpp"
#include "cpg/polynomials.hpp"
#include "cpg/projection.hpp"
#include "cpg/random.hpp"
#include "cpg/solve.hpp"
#include "cpg/study.hpp"

#include <Eigen/Sparse>

using namespace cpg;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Band {
    const char* column;
    double lo, hi;
};

// Observed order of a CSV column on the finest consecutive-level pair where
// neither error is masked (absent or at the 1e-12 floor).
std::optional<double> finest_order(const StudyTable& table, const std::string& column) {
    const auto orders = table_rates(table);
    int col = -1;
    for (std::size_t c = 5; c < table.columns.size(); ++c)
        if (table.columns[c] == column) col = static_cast<int>(c - 5);
    if (col < 0) return std::nullopt;
    for (int r = static_cast<int>(orders.size()) - 1; r >= 0; --r)
        if (orders[r][col]) return orders[r][col];
    return std::nullopt;
}

bool check_bands(const StudyTable& table, const std::vector<Band>& bands, std::string& detail) {
    bool ok = true;
    char buf[128];
    for (const Band& b : bands) {
        const auto order = finest_order(table, b.column);
        const bool in = order && *order >= b.lo && *order <= b.hi;
        if (order)
            std::snprintf(buf, sizeof buf, " %s=%.2f[%g,%g]%s", b.column, *order, b.lo, b.hi,
                          in ? "" : "*");
        else
            std::snprintf(buf, sizeof buf, " %s=--[%g,%g]*", b.column, b.lo, b.hi);
        detail += buf;
        ok = ok && in;
    }
    return ok;
}

StudyTable run(const std::string& problem, int k, std::vector<int> meshes, double* seconds = nullptr) {
    StudyConfig config;
    config.problem = problem;
    config.k = k;
    config.meshes = std::move(meshes);
    config.eps = 1e-3;
    config.seed = 42;
    const auto t0 = std::chrono::steady_clock::now();
    const StudyResult result = run_study(config);
    if (seconds)
        *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return to_table(result);
}

int report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    return ok ? 0 : 1;
}

// --- criterion 5 helpers ---------------------------------------------------

double identity_residual() {
    double worst = 0.0;
    for (int n = 3; n <= 9; ++n) {
        const double c = 4.0 * (n - 1.0) * (n - 2.0);
        for (int i = 0; i <= 20; ++i) {
            const double s = -1.0 + 0.1 * i;
            const PolySample lhs = gjacobi(n + 1, s);
            const double bridge =
                c / (2.0 * n - 1.0) * (lobatto(n, s).value - lobatto(n - 2, s).value);
            worst = std::max(worst, std::abs(lhs.value - bridge));
            worst = std::max(worst, std::abs(lhs.d2 - c * legendre(n - 1, s).value));
        }
    }
    return worst;
}

SmoothField2D field_of(const CoefficientField& f) {
    SmoothField2D out;
    out.u = [f](double x, double y) { return f.eval(x, y); };
    out.ux = [f](double x, double y) { return f.eval(x, y, 1, 0); };
    out.uy = [f](double x, double y) { return f.eval(x, y, 0, 1); };
    out.uxx = [f](double x, double y) { return f.eval(x, y, 2, 0); };
    out.uyy = [f](double x, double y) { return f.eval(x, y, 0, 2); };
    out.uxy = [f](double x, double y) { return f.eval(x, y, 1, 1); };
    return out;
}

double projection_exactness_residual() {
    double worst = 0.0;
    for (int k : {3, 4, 5}) {
        const auto space = std::make_shared<TrialSpace>(
            make_mesh(3, 2, 0, 1, 0, 1, 0.3, 41), k, false);
        Eigen::VectorXd v(space->dim());
        for (int i = 0; i < v.size(); ++i) v(i) = 2.0 * uniform_open01(5, 7, i) - 1.0;
        const CoefficientField target(space, v);
        const CoefficientField proj = project_field(field_of(target), space);
        worst = std::max(worst, (proj.values() - v).lpNorm<Eigen::Infinity>());
    }
    return worst;
}

double nodal_exactness_residual() {
    SmoothField2D u;
    u.u = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    u.ux = [](double x, double y) { return kPi * std::cos(kPi * x) * std::sin(kPi * y); };
    u.uy = [](double x, double y) { return kPi * std::sin(kPi * x) * std::cos(kPi * y); };
    u.uxx = [](double x, double y) { return -kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y); };
    u.uyy = [](double x, double y) { return -kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y); };
    u.uxy = [](double x, double y) { return kPi * kPi * std::cos(kPi * x) * std::cos(kPi * y); };
    const auto space = std::make_shared<TrialSpace>(make_mesh(4, 4, 0, 1, 0, 1, 0.25, 13), 4);
    const CoefficientField ui = project_field(u, space);
    const auto& mesh = space->mesh();
    double worst = 0.0;
    for (int i = 0; i <= mesh.mx(); ++i)
        for (int j = 0; j <= mesh.my(); ++j) {
            const double x = mesh.px.coords[i], y = mesh.py.coords[j];
            worst = std::max(worst, std::abs(ui.eval(x, y) - u.u(x, y)));
            worst = std::max(worst, std::abs(ui.eval(x, y, 1, 0) - u.ux(x, y)));
            worst = std::max(worst, std::abs(ui.eval(x, y, 0, 1) - u.uy(x, y)));
        }
    return worst;
}

bool dims_and_solvability(std::string& note) {
    for (int M = 1; M <= 4; ++M)
        for (int N = 1; N <= 3; ++N)
            for (int k = 3; k <= 8; ++k)
                if (trial_dim(M, N, k) != test_dim(M, N, k)) {
                    note = "dimension mismatch";
                    return false;
                }
    struct Case {
        const char* problem;
        int k, M;
    };
    for (const Case c : {Case{"ex1a", 3, 4}, Case{"ex1a", 3, 8}, Case{"ex1a", 4, 4},
                         Case{"ex2", 3, 4}}) {
        const ProblemSpec p = make_problem(c.problem);
        const TrialSpace space(make_mesh(c.M, c.M, 0, 1, 0, 1, 1e-3, 42), c.k);
        const SparseSystem sys = assemble(space, p);
        Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(sys.matrix);
        if (lu.info() != Eigen::Success) {
            note = std::string("singular factorization for ") + c.problem;
            return false;
        }
    }
    return true;
}

// separable polynomial with zero boundary values on (0,1)^2
struct Factor {
    std::function<double(double)> f, d1, d2;
};

SmoothField2D product_field(const Factor& X, const Factor& Y) {
    SmoothField2D out;
    out.u = [=](double x, double y) { return X.f(x) * Y.f(y); };
    out.ux = [=](double x, double y) { return X.d1(x) * Y.f(y); };
    out.uy = [=](double x, double y) { return X.f(x) * Y.d1(y); };
    out.uxx = [=](double x, double y) { return X.d2(x) * Y.f(y); };
    out.uyy = [=](double x, double y) { return X.f(x) * Y.d2(y); };
    out.uxy = [=](double x, double y) { return X.d1(x) * Y.d1(y); };
    return out;
}

double pipeline_reproduction_residual() {
    const Factor cubic{[](double s) { return s * (1 - s) * (s + 0.5); },
                       [](double s) { return -3 * s * s + s + 0.5; },
                       [](double s) { return -6 * s + 1; }};
    const Factor quartic{[](double s) { return s * s * (1 - s) * (1 - s); },
                         [](double s) { return 2 * s * (1 - s) * (1 - 2 * s); },
                         [](double s) { return 2 - 12 * s + 12 * s * s; }};
    double worst = 0.0;
    for (int k : {3, 4}) {
        ProblemSpec p = example1('a');
        p.exact = (k == 3) ? product_field(cubic, cubic) : product_field(quartic, quartic);
        const auto space =
            std::make_shared<TrialSpace>(make_mesh(3, 3, 0, 1, 0, 1, 0.25, 11), k);
        const SparseSystem sys = assemble(*space, p);
        const CoefficientField uh(space, solve_linear(sys));
        for (int t = 0; t < 60; ++t) {
            const double x = uniform_open01(23, 0, t);
            const double y = uniform_open01(23, 1, t);
            worst = std::max(worst, std::abs(uh.eval(x, y) - p.exact.u(x, y)));
        }
    }
    return worst;
}

double orthogonality_residual() {
    struct Case {
        const char* problem;
        int k, M;
    };
    double worst = 0.0;
    for (const Case c : {Case{"ex1a", 3, 8}, Case{"ex2", 3, 4}, Case{"ex1a", 4, 4}}) {
        const ProblemSpec p = make_problem(c.problem);
        const auto space =
            std::make_shared<TrialSpace>(make_mesh(c.M, c.M, 0, 1, 0, 1, 1e-3, 42), c.k);
        const SparseSystem sys = assemble(*space, p);
        const Eigen::VectorXd coeffs = solve_linear(sys);
        const int hi = default_quad_points(p, c.k) + 3;
        const SparseSystem check = assemble(*space, p, hi);
        worst = std::max(worst, residual_check(check, coeffs));
    }
    return worst;
}

}  // namespace

int main() {
    int failures = 0;

    // 1: optimal orders plus node superconvergence, ex1a at k = 3
    StudyTable t1;
    try {
        double seconds = 0.0;
        t1 = run("ex1a", 3, {4, 8, 16, 32}, &seconds);
        std::string detail;
        bool ok = check_bands(t1,
                              {{"e_un", 3.6, 4.4},
                               {"e_gradn", 3.6, 4.4},
                               {"e_grad_max", 3.6, 4.4},
                               {"e_lap_max", 2.6, 3.4},
                               {"L2", 3.6, 4.4},
                               {"H1", 2.6, 3.4},
                               {"H2", 1.6, 2.4}},
                              detail);
        char buf[64];
        std::snprintf(buf, sizeof buf, " runtime=%.1fs[<60]%s", seconds,
                      seconds < 60.0 ? "" : "*");
        detail += buf;
        ok = ok && seconds < 60.0;
        failures += report(1, ok, detail);
    } catch (const std::exception& e) {
        failures += report(1, false, std::string("exception: ") + e.what());
    }

    // 2: higher-degree superconvergence, ex1a at k = 4
    StudyTable t2;
    try {
        t2 = run("ex1a", 4, {2, 4, 8, 16});
        std::string detail;
        const bool ok = check_bands(t2,
                                    {{"e_un", 5.5, 6.5},
                                     {"e_gradn", 5.5, 6.5},
                                     {"e_uJ", 5.5, 6.5},
                                     {"e_u_max", 5.5, 6.5},
                                     {"e_gradl", 4.5, 5.5},
                                     {"e_grad_max", 4.5, 5.5},
                                     {"e_lapg", 3.5, 4.5},
                                     {"e_lap_max", 3.5, 4.5}},
                                    detail);
        failures += report(2, ok, detail);
    } catch (const std::exception& e) {
        failures += report(2, false, std::string("exception: ") + e.what());
    }

    // 3: supercloseness between u_h and the projection
    try {
        std::string detail;
        bool ok = true;
        if (t1.rows.empty() || t2.rows.empty()) {
            ok = false;
            detail = "missing study data from criteria 1 / 2";
        } else {
            ok = check_bands(t1, {{"sc_L2", 3.6, 4.4}, {"sc_H1", 3.6, 4.4}, {"sc_H2", 2.6, 3.4}},
                             detail);
            detail += " |";
            ok = check_bands(t2, {{"sc_L2", 5.5, 6.5}}, detail) && ok;
        }
        failures += report(3, ok, detail);
    } catch (const std::exception& e) {
        failures += report(3, false, std::string("exception: ") + e.what());
    }

    // 4: variable coefficients, ex2 at k = 3
    try {
        const StudyTable t4 = run("ex2", 3, {4, 8, 16, 32});
        std::string detail;
        const bool ok = check_bands(t4,
                                    {{"e_un", 3.6, 4.4},
                                     {"e_gradn", 3.6, 4.4},
                                     {"e_grad_max", 3.6, 4.4},
                                     {"e_lap_max", 2.6, 3.4},
                                     {"L2", 3.6, 4.4},
                                     {"H1", 2.6, 3.4},
                                     {"H2", 1.6, 2.4}},
                                    detail);
        failures += report(4, ok, detail);
    } catch (const std::exception& e) {
        failures += report(4, false, std::string("exception: ") + e.what());
    }

    // 5: property battery
    try {
        std::string detail;
        char buf[96];
        const double a = identity_residual();
        const double b1 = projection_exactness_residual();
        const double b2 = nodal_exactness_residual();
        std::string note;
        const bool c = dims_and_solvability(note);
        const double d = pipeline_reproduction_residual();
        const double e = orthogonality_residual();
        std::snprintf(buf, sizeof buf, " identities=%.1e[<=1e-12]%s", a, a <= 1e-12 ? "" : "*");
        detail += buf;
        std::snprintf(buf, sizeof buf, " projection=%.1e[<=1e-11]%s", b1, b1 <= 1e-11 ? "" : "*");
        detail += buf;
        std::snprintf(buf, sizeof buf, " nodal=%.1e[<=1e-10]%s", b2, b2 <= 1e-10 ? "" : "*");
        detail += buf;
        detail += std::string(" dims/solvability=") + (c ? "ok" : ("FAIL " + note));
        std::snprintf(buf, sizeof buf, " reproduction=%.1e[<=1e-9]%s", d, d <= 1e-9 ? "" : "*");
        detail += buf;
        std::snprintf(buf, sizeof buf, " orthogonality=%.1e[<=1e-9]%s", e, e <= 1e-9 ? "" : "*");
        detail += buf;
        const bool ok =
            a <= 1e-12 && b1 <= 1e-11 && b2 <= 1e-10 && c && d <= 1e-9 && e <= 1e-9;
        failures += report(5, ok, detail);
    } catch (const std::exception& e) {
        failures += report(5, false, std::string("exception: ") + e.what());
    }

    // 6: informational rates for the pure-diffusion variants
    try {
        for (const char* problem : {"ex1b", "ex1d"})
            for (int k : {4, 5}) {
                const StudyTable t = run(problem, k, {2, 4, 8, 16});
                const auto h1 = finest_order(t, "sc_H1");
                const auto h2 = finest_order(t, "sc_H2");
                std::printf("  info %s k=%d: sc_H1 order=%s sc_H2 order=%s\n", problem, k,
                            h1 ? std::to_string(*h1).substr(0, 5).c_str() : "--",
                            h2 ? std::to_string(*h2).substr(0, 5).c_str() : "--");
            }
        failures += report(6, true, "(informational)");
    } catch (const std::exception& e) {
        failures += report(6, false, std::string("exception: ") + e.what());
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
