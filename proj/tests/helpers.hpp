// Shared test utilities: superoperator application, random states and rates.

#pragma once

#include "vibpol/generators.hpp"
#include "vibpol/model.hpp"

#include <Eigen/Dense>

#include <random>

namespace vibpol::test {

inline Eigen::MatrixXcd apply_superop(const SparseSuperOp& m, const Eigen::MatrixXcd& rho) {
    const int d = int(rho.rows());
    Eigen::VectorXcd v(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) v(a * d + b) = rho(a, b);
    Eigen::VectorXcd w = m * v;
    Eigen::MatrixXcd out(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out(a, b) = w(a * d + b);
    return out;
}

inline Eigen::MatrixXcd random_density(int dim, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace();
}

inline Eigen::MatrixXcd random_matrix(int dim, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    return a;
}

inline RateSet random_rates(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace vibpol::test
