// superop.hpp — sparse superoperator assembly over row-major vectorized
// density matrices: rho_(a,b) lives at index a*dim + b.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <vector>

namespace vibpol {

using Complex = std::complex<double>;
using SparseSuperOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

class SuperOpBuilder {
public:
    explicit SuperOpBuilder(int op_dim) : d_(op_dim) {}

    int op_dim() const { return d_; }
    int vec_dim() const { return d_ * d_; }

    // Raw entry: d/dt rho_(a,b) += v * rho_(c,e).
    void add_entry(int a, int b, int c, int e, Complex v) {
        trips_.emplace_back(a * d_ + b, c * d_ + e, v);
    }

    // rho -> s * X rho
    void add_left(const Eigen::MatrixXcd& x, Complex s) {
        for (int a = 0; a < d_; ++a)
            for (int c = 0; c < d_; ++c) {
                const Complex v = s * x(a, c);
                if (v == Complex(0.0, 0.0)) continue;
                for (int b = 0; b < d_; ++b) add_entry(a, b, c, b, v);
            }
    }

    // rho -> s * rho X
    void add_right(const Eigen::MatrixXcd& x, Complex s) {
        for (int e = 0; e < d_; ++e)
            for (int b = 0; b < d_; ++b) {
                const Complex v = s * x(e, b);
                if (v == Complex(0.0, 0.0)) continue;
                for (int a = 0; a < d_; ++a) add_entry(a, b, a, e, v);
            }
    }

    // rho -> s * A rho B
    void add_sandwich(const Eigen::MatrixXcd& a_op, const Eigen::MatrixXcd& b_op, Complex s) {
        for (int a = 0; a < d_; ++a)
            for (int c = 0; c < d_; ++c) {
                const Complex av = a_op(a, c);
                if (av == Complex(0.0, 0.0)) continue;
                for (int e = 0; e < d_; ++e)
                    for (int b = 0; b < d_; ++b) {
                        const Complex bv = b_op(e, b);
                        if (bv == Complex(0.0, 0.0)) continue;
                        add_entry(a, b, c, e, s * av * bv);
                    }
            }
    }

    // rho -> rate * (A rho A† - ½{A†A, rho})
    void add_dissipator(const Eigen::MatrixXcd& a_op, double rate) {
        if (rate == 0.0) return;
        add_sandwich(a_op, a_op.adjoint(), rate);
        const Eigen::MatrixXcd n_op = a_op.adjoint() * a_op;
        add_left(n_op, -0.5 * rate);
        add_right(n_op, -0.5 * rate);
    }

    // rho -> rate * (A rho B† + B rho A†); requires A B = 0 so the term is
    // trace-annihilating without anticommutator parts.
    void add_sandwich_pair(const Eigen::MatrixXcd& a_op, const Eigen::MatrixXcd& b_op,
                           double rate) {
        if ((a_op * b_op).cwiseAbs().maxCoeff() > 1e-14)
            throw std::invalid_argument("add_sandwich_pair: A B != 0 breaks trace preservation");
        if (rate == 0.0) return;
        add_sandwich(a_op, b_op.adjoint(), rate);
        add_sandwich(b_op, a_op.adjoint(), rate);
    }

    // rho -> s * ([A rho, B] + h.c.)
    void add_commutator_hc(const Eigen::MatrixXcd& a_op, const Eigen::MatrixXcd& b_op,
                           Complex s) {
        if (s == Complex(0.0, 0.0)) return;
        add_sandwich(a_op, b_op, s);
        add_left(b_op * a_op, -s);
        add_sandwich(b_op.adjoint(), a_op.adjoint(), std::conj(s));
        add_right(a_op.adjoint() * b_op.adjoint(), -std::conj(s));
    }

    SparseSuperOp build() const {
        SparseSuperOp m(vec_dim(), vec_dim());
        m.setFromTriplets(trips_.begin(), trips_.end());
        m.prune([](int, int, const Complex& v) { return std::abs(v) > 0.0; });
        return m;
    }

private:
    int d_;
    std::vector<Eigen::Triplet<Complex>> trips_;
};

// |a><b| on a dim-dimensional space.
inline Eigen::MatrixXcd elementary_op(int dim, int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(a, b) = Complex(1.0, 0.0);
    return m;
}

}  // namespace vibpol
