#include "cpg/assembly.hpp"

#include <stdexcept>
#include <vector>

#include "cpg/parallel.hpp"

namespace cpg {

namespace {

// Samples of the trial family J_0..J_k and the test family L_0..L_{k-2} at
// the quadrature nodes of one direction.
struct BasisTables {
    // trial[a][n], test[p][n]
    std::vector<std::vector<PolySample>> trial;
    std::vector<std::vector<double>> test;
};

BasisTables tabulate(int k, const std::vector<double>& nodes) {
    BasisTables t;
    t.trial.resize(k + 1);
    for (int a = 0; a <= k; ++a) {
        t.trial[a].reserve(nodes.size());
        for (double s : nodes) t.trial[a].push_back(gjacobi(a, s));
    }
    t.test.resize(k - 1);
    for (int p = 0; p <= k - 2; ++p) {
        t.test[p].reserve(nodes.size());
        for (double s : nodes) t.test[p].push_back(legendre(p, s).value);
    }
    return t;
}

// Dense block and load vector of one element against reference shapes.
void element_block(const TensorMesh& mesh, int i, int j, const ProblemSpec& problem,
                   const std::function<double(double, double)>& f, int k, const QuadRule& quad,
                   const BasisTables& tab, Eigen::MatrixXd& B, Eigen::VectorXd* load) {
    const int m = static_cast<int>(quad.nodes.size());
    const int rows = (k - 1) * (k - 1), cols = (k + 1) * (k + 1);
    const auto box = mesh.element(i, j);
    const double hx = box.hx(), hy = box.hy();
    const double cx1 = 2.0 / hx, cx2 = cx1 * cx1;
    const double cy1 = 2.0 / hy, cy2 = cy1 * cy1;

    B.setZero(rows, cols);
    if (load) load->setZero(rows);
    Eigen::VectorXd op(cols);

    for (int nx = 0; nx < m; ++nx) {
        const double x = from_reference(box.x0, box.x1, quad.nodes[nx]);
        for (int ny = 0; ny < m; ++ny) {
            const double y = from_reference(box.y0, box.y1, quad.nodes[ny]);
            const double al = problem.alpha(x, y);
            const double ax = problem.alpha_x(x, y), ay = problem.alpha_y(x, y);
            const double b1 = problem.beta1(x, y), b2 = problem.beta2(x, y);
            const double ga = problem.gamma(x, y);
            const double w = quad.weights[nx] * quad.weights[ny] * hx * hy / 4.0;

            for (int a = 0; a <= k; ++a) {
                const PolySample& bs = tab.trial[a][nx];
                for (int b = 0; b <= k; ++b) {
                    const PolySample& bt = tab.trial[b][ny];
                    const double lap = cx2 * bs.d2 * bt.value + cy2 * bs.value * bt.d2;
                    const double gx = cx1 * bs.d1 * bt.value;
                    const double gy = cy1 * bs.value * bt.d1;
                    op(a * (k + 1) + b) =
                        -al * lap - ax * gx - ay * gy + b1 * gx + b2 * gy + ga * bs.value * bt.value;
                }
            }
            for (int p = 0; p <= k - 2; ++p) {
                const double tp = tab.test[p][nx];
                for (int q = 0; q <= k - 2; ++q) {
                    const double wt = w * tp * tab.test[q][ny];
                    B.row(p * (k - 1) + q) += wt * op.transpose();
                }
            }
            if (load) {
                const double wf = w * f(x, y);
                for (int p = 0; p <= k - 2; ++p) {
                    const double tp = tab.test[p][nx];
                    for (int q = 0; q <= k - 2; ++q)
                        (*load)(p * (k - 1) + q) += wf * tp * tab.test[q][ny];
                }
            }
        }
    }
}

}  // namespace

Eigen::MatrixXd element_matrix(const TensorMesh& mesh, int i, int j, const ProblemSpec& problem,
                               int k, const QuadRule& quad) {
    if (k < 3 || k > 8) throw std::invalid_argument("element_matrix: degree must be in [3, 8]");
    if (static_cast<int>(quad.nodes.size()) < k + 1)
        throw std::invalid_argument(
            "element_matrix: quadrature rule is below the exactness floor (need >= k+1 points)");
    const BasisTables tab = tabulate(k, quad.nodes);
    Eigen::MatrixXd B;
    element_block(mesh, i, j, problem, nullptr, k, quad, tab, B, nullptr);
    return B;
}

int default_quad_points(const ProblemSpec& problem, int k) {
    return problem.constant_coefficients ? k + 1 : k + 3;
}

SparseSystem assemble(const TrialSpace& space, const ProblemSpec& problem, const QuadRule& quad) {
    if (!space.zero_trace())
        throw std::invalid_argument("assemble: the trial space must impose the boundary condition");
    const int k = space.degree();
    if (static_cast<int>(quad.nodes.size()) < k + 1)
        throw std::invalid_argument(
            "assemble: quadrature rule is below the exactness floor (need >= k+1 points)");

    const TensorMesh& mesh = space.mesh();
    const int M = mesh.mx(), N = mesh.my();
    const int n_elem = M * N;
    const int block = (k - 1) * (k - 1);
    const int n = space.dim();

    const BasisTables tab = tabulate(k, quad.nodes);
    const auto f = forcing(problem);
    const TestSpace test(M, N, k);

    // column map of one element: kept trial dofs with their scales
    struct Col {
        int local, global;
        double scale;
    };
    std::vector<std::vector<Col>> columns(n_elem);
    std::vector<std::size_t> offset(n_elem + 1, 0);
    for (int e = 0; e < n_elem; ++e) {
        const int i = e / N, j = e % N;
        const auto box = mesh.element(i, j);
        auto& cols = columns[e];
        for (int a = 0; a <= k; ++a) {
            const auto lx = space.dofx().local(i, a, box.hx());
            if (lx.global < 0) continue;
            for (int b = 0; b <= k; ++b) {
                const auto ly = space.dofy().local(j, b, box.hy());
                if (ly.global < 0) continue;
                cols.push_back({a * (k + 1) + b, space.global_index(lx.global, ly.global),
                                lx.scale * ly.scale});
            }
        }
        offset[e + 1] = offset[e] + cols.size() * block;
    }

    std::vector<Eigen::Triplet<double>> triplets(offset[n_elem]);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    parallel_for(n_elem, [&](int e) {
        const int i = e / N, j = e % N;
        Eigen::MatrixXd B;
        Eigen::VectorXd load;
        element_block(mesh, i, j, problem, f, k, quad, tab, B, &load);
        std::size_t slot = offset[e];
        for (int r = 0; r < block; ++r) {
            const int row = e * block + r;
            for (const Col& c : columns[e])
                triplets[slot++] = {row, c.global, c.scale * B(r, c.local)};
            rhs(row) = load(r);
        }
    });

    SparseSystem sys;
    sys.matrix.resize(test.dim(), n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    sys.rhs = std::move(rhs);
    return sys;
}

SparseSystem assemble(const TrialSpace& space, const ProblemSpec& problem, int quad_points) {
    const int m = quad_points > 0 ? quad_points : default_quad_points(problem, space.degree());
    return assemble(space, problem, gauss_rule(m));
}

double residual_check(const SparseSystem& sys, const Eigen::VectorXd& coeffs) {
    const Eigen::VectorXd r = sys.matrix * coeffs - sys.rhs;
    return r.lpNorm<Eigen::Infinity>() / (1.0 + sys.rhs.lpNorm<Eigen::Infinity>());
}

}  // namespace cpg
