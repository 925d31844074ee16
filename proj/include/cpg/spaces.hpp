#pragma once

// Discrete spaces on a tensor mesh.
//
// Trial space: C^1 tensor-product piecewise Q_k built from the (-2,-2)
// family. Each 1D factor couples neighboring cells only through the shared
// node value and node derivative; indices 0..3 of the local basis are the
// Hermite shapes, 4..k are cell bubbles with double roots at both ends.
// Derivative degrees of freedom store the physical slope, so the local
// coefficient of chi is (h/2) times the stored value.
//
// Test space: discontinuous tensor Q_{k-2} with the Legendre basis,
// element-major rows. Dimensions match: M*N*(k-1)^2 on both sides once the
// trial space drops its boundary values.

#include <memory>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "cpg/mesh.hpp"
#include "cpg/polynomials.hpp"

namespace cpg {

// Index map for one direction of the C^1 factor space: node values, node
// derivatives, then cell bubbles. zero_trace drops the two endpoint values.
class Dof1D {
public:
    Dof1D() = default;
    Dof1D(int cells, int k, bool zero_trace)
        : m_(cells), k_(k), zero_trace_(zero_trace) {
        if (cells < 1) throw std::invalid_argument("Dof1D: need at least one cell");
        if (k < 3 || k > 8) throw std::invalid_argument("Dof1D: degree must be in [3, 8]");
    }

    int cells() const { return m_; }
    int degree() const { return k_; }
    int n_values() const { return zero_trace_ ? m_ - 1 : m_ + 1; }
    int dim() const { return n_values() + (m_ + 1) + m_ * (k_ - 3); }

    // -1 marks an eliminated boundary value
    int value_dof(int node) const {
        if (!zero_trace_) return node;
        return (node == 0 || node == m_) ? -1 : node - 1;
    }
    int deriv_dof(int node) const { return n_values() + node; }
    int bubble_dof(int cell, int p) const {
        return n_values() + (m_ + 1) + cell * (k_ - 3) + (p - 4);
    }

    struct LocalDof {
        int global;    // -1 when eliminated
        double scale;  // local coefficient = scale * stored value
    };
    // Local shape p of cell e; h is the cell width.
    LocalDof local(int cell, int p, double h) const {
        switch (p) {
        case 0: return {value_dof(cell), 1.0};
        case 1: return {value_dof(cell + 1), 1.0};
        case 2: return {deriv_dof(cell), 0.5 * h};
        case 3: return {deriv_dof(cell + 1), 0.5 * h};
        default: return {bubble_dof(cell, p), 1.0};
        }
    }

private:
    int m_ = 0, k_ = 0;
    bool zero_trace_ = true;
};

class TrialSpace {
public:
    TrialSpace(TensorMesh mesh, int k, bool zero_trace = true)
        : mesh_(std::move(mesh)), k_(k), zero_trace_(zero_trace),
          dofx_(mesh_.mx(), k, zero_trace), dofy_(mesh_.my(), k, zero_trace) {}

    const TensorMesh& mesh() const { return mesh_; }
    int degree() const { return k_; }
    bool zero_trace() const { return zero_trace_; }
    const Dof1D& dofx() const { return dofx_; }
    const Dof1D& dofy() const { return dofy_; }

    int dim() const { return dofx_.dim() * dofy_.dim(); }
    int global_index(int gx, int gy) const { return gx * dofy_.dim() + gy; }

    // Physical-derivative value of the local shape (p,q) = local/(k+1), local%(k+1)
    // of element (i,j) at reference point (s,t).
    double eval_basis(int i, int j, int local, double s, double t, int dx, int dy) const {
        const auto box = mesh_.element(i, j);
        const int p = local / (k_ + 1), q = local % (k_ + 1);
        const auto lx = dofx_.local(i, p, box.hx());
        const auto ly = dofy_.local(j, q, box.hy());
        const PolySample bs = gjacobi(p, s), bt = gjacobi(q, t);
        const double fs = (dx == 0) ? bs.value : (dx == 1) ? bs.d1 : bs.d2;
        const double ft = (dy == 0) ? bt.value : (dy == 1) ? bt.d1 : bt.d2;
        double v = lx.scale * ly.scale * fs * ft;
        for (int r = 0; r < dx; ++r) v *= 2.0 / box.hx();
        for (int r = 0; r < dy; ++r) v *= 2.0 / box.hy();
        return v;
    }

private:
    TensorMesh mesh_;
    int k_;
    bool zero_trace_;
    Dof1D dofx_, dofy_;
};

inline int trial_dim(int M, int N, int k) { return M * (k - 1) * N * (k - 1); }
inline int test_dim(int M, int N, int k) { return M * N * (k - 1) * (k - 1); }

class TestSpace {
public:
    TestSpace(int M, int N, int k) : m_(M), n_(N), k_(k) {}
    int dim() const { return test_dim(m_, n_, k_); }
    int block() const { return (k_ - 1) * (k_ - 1); }
    // Row of Legendre mode (p,q), 0 <= p,q <= k-2, on element (i,j).
    int row(int i, int j, int p, int q) const {
        return (i * n_ + j) * block() + p * (k_ - 1) + q;
    }

private:
    int m_, n_, k_;
};

// Element-local view of a coefficient field: the (k+1)x(k+1) matrix of local
// basis coefficients, ready for repeated reference-point evaluation.
struct LocalField {
    Eigen::MatrixXd coeff;  // (k+1)x(k+1), scales folded in
    double hx = 0.0, hy = 0.0;

    struct Derivs {
        double v, dx, dy, dxx, dyy, dxy;
    };
    // Value and all physical derivatives through second order in one sweep.
    Derivs eval_all(double s, double t) const {
        const int n = static_cast<int>(coeff.rows());
        double v = 0, ds = 0, dt = 0, dss = 0, dtt = 0, dst = 0;
        PolySample bt[9];
        for (int q = 0; q < n; ++q) bt[q] = gjacobi(q, t);
        for (int p = 0; p < n; ++p) {
            const PolySample bs = gjacobi(p, s);
            double r0 = 0, r1 = 0, r2 = 0;
            for (int q = 0; q < n; ++q) {
                const double c = coeff(p, q);
                r0 += c * bt[q].value;
                r1 += c * bt[q].d1;
                r2 += c * bt[q].d2;
            }
            v += bs.value * r0;
            ds += bs.d1 * r0;
            dt += bs.value * r1;
            dss += bs.d2 * r0;
            dtt += bs.value * r2;
            dst += bs.d1 * r1;
        }
        const double cx = 2.0 / hx, cy = 2.0 / hy;
        return {v, cx * ds, cy * dt, cx * cx * dss, cy * cy * dtt, cx * cy * dst};
    }

    double eval(double s, double t, int dx, int dy) const {
        const int n = static_cast<int>(coeff.rows());
        double acc = 0.0;
        for (int p = 0; p < n; ++p) {
            const PolySample bs = gjacobi(p, s);
            const double fs = (dx == 0) ? bs.value : (dx == 1) ? bs.d1 : bs.d2;
            if (fs == 0.0) continue;
            double row = 0.0;
            for (int q = 0; q < n; ++q) {
                const PolySample bt = gjacobi(q, t);
                const double ft = (dy == 0) ? bt.value : (dy == 1) ? bt.d1 : bt.d2;
                row += coeff(p, q) * ft;
            }
            acc += fs * row;
        }
        double v = acc;
        for (int r = 0; r < dx; ++r) v *= 2.0 / hx;
        for (int r = 0; r < dy; ++r) v *= 2.0 / hy;
        return v;
    }
};

class CoefficientField {
public:
    explicit CoefficientField(std::shared_ptr<const TrialSpace> space)
        : space_(std::move(space)), values_(Eigen::VectorXd::Zero(space_->dim())) {}
    CoefficientField(std::shared_ptr<const TrialSpace> space, Eigen::VectorXd values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (values_.size() != space_->dim())
            throw std::invalid_argument("CoefficientField: coefficient count does not match the space");
    }

    const TrialSpace& space() const { return *space_; }
    std::shared_ptr<const TrialSpace> space_ptr() const { return space_; }
    Eigen::VectorXd& values() { return values_; }
    const Eigen::VectorXd& values() const { return values_; }

    LocalField local(int i, int j) const {
        const int k = space_->degree();
        const auto box = space_->mesh().element(i, j);
        LocalField lf;
        lf.coeff.resize(k + 1, k + 1);
        lf.hx = box.hx();
        lf.hy = box.hy();
        for (int p = 0; p <= k; ++p) {
            const auto lx = space_->dofx().local(i, p, box.hx());
            for (int q = 0; q <= k; ++q) {
                const auto ly = space_->dofy().local(j, q, box.hy());
                lf.coeff(p, q) = (lx.global < 0 || ly.global < 0)
                                     ? 0.0
                                     : lx.scale * ly.scale *
                                           values_(space_->global_index(lx.global, ly.global));
            }
        }
        return lf;
    }

    double eval(double x, double y, int dx = 0, int dy = 0) const {
        const auto& mesh = space_->mesh();
        const int i = find_cell(mesh.px, x);
        const int j = find_cell(mesh.py, y);
        const auto box = mesh.element(i, j);
        return local(i, j).eval(to_reference(box.x0, box.x1, x),
                                to_reference(box.y0, box.y1, y), dx, dy);
    }

private:
    std::shared_ptr<const TrialSpace> space_;
    Eigen::VectorXd values_;
};

}  // namespace cpg
