// dynamics.hpp — propagation, observables, decay-rate fitting, steady states.

#pragma once

#include "vibpol/generators.hpp"
#include "vibpol/model.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vibpol {

enum class Picture { Schroedinger, Interaction };
enum class Integrator { Rk4, MatrixExp };

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_steps = 100;  // number of intervals; stored points = n_steps + 1

    void validate() const {
        if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
        if (n_steps < 2) throw std::invalid_argument("TimeGrid: n_steps must be >= 2");
    }
    double dt() const { return (t_end - t_start) / n_steps; }
    double time(int k) const { return t_start + k * dt(); }
};

struct Trajectory {
    TimeGrid grid;
    Picture picture = Picture::Interaction;
    std::vector<Eigen::MatrixXcd> states;  // one per grid point
};

// Tracked-elements-only trajectory for large N.
struct TrackedTrajectory {
    TimeGrid grid;
    Picture picture = Picture::Interaction;
    std::vector<std::pair<int, int>> elements;       // (a, b) state indices
    std::vector<std::vector<Complex>> values;        // values[k][e]
};

inline void validate_initial_state(const Eigen::MatrixXcd& rho, int dim) {
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("initial state: dimension mismatch");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("initial state: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
        throw std::invalid_argument("initial state: trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("initial state: not positive semidefinite");
}

namespace detail {

inline SparseSuperOp picture_matrix(const Liouvillian& L, Picture picture) {
    // Interaction picture drops the coherent part; exact here because H_S is
    // diagonal and the dissipative blocks couple only equal-frequency
    // coherences.
    return picture == Picture::Schroedinger ? L.full() : L.dissipative;
}

template <typename Step>
void run_grid(const Liouvillian& L, const Eigen::MatrixXcd& rho0, const TimeGrid& grid,
              Step&& step, const std::function<void(int, const Eigen::VectorXcd&)>& emit) {
    const int d = L.op_dim;
    Eigen::VectorXcd v(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) v(a * d + b) = rho0(a, b);
    const double tr0 = rho0.trace().real();
    emit(0, v);
    for (int k = 1; k <= grid.n_steps; ++k) {
        step(v);
        double tr = 0.0;
        for (int a = 0; a < d; ++a) tr += v(a * d + a).real();
        if (std::abs(tr - tr0) > 1e-6)
            throw std::runtime_error(
                "propagate: trace drift exceeds 1e-6; reduce the step size");
        emit(k, v);
    }
}

inline std::function<void(Eigen::VectorXcd&)> make_stepper(const Liouvillian& L,
                                                           Picture picture,
                                                           Integrator method,
                                                           double dt) {
    if (method == Integrator::MatrixExp) {
        if (L.op_dim * L.op_dim > 81)
            throw std::invalid_argument("matrix-exponential stepping limited to dimension <= 81");
        Eigen::MatrixXcd m = Eigen::MatrixXcd(picture_matrix(L, picture)) * dt;
        Eigen::MatrixXcd propagator = m.exp();
        return [propagator](Eigen::VectorXcd& v) { v = propagator * v; };
    }
    SparseSuperOp m = picture_matrix(L, picture);
    return [m, dt](Eigen::VectorXcd& v) {
        Eigen::VectorXcd k1 = m * v;
        Eigen::VectorXcd k2 = m * (v + 0.5 * dt * k1);
        Eigen::VectorXcd k3 = m * (v + 0.5 * dt * k2);
        Eigen::VectorXcd k4 = m * (v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
}

}  // namespace detail

inline Trajectory propagate(const Liouvillian& L, const Eigen::MatrixXcd& rho0,
                            const TimeGrid& grid, Picture picture,
                            Integrator method = Integrator::Rk4) {
    grid.validate();
    validate_initial_state(rho0, L.op_dim);
    Trajectory out;
    out.grid = grid;
    out.picture = picture;
    out.states.resize(grid.n_steps + 1);
    const int d = L.op_dim;
    auto step = detail::make_stepper(L, picture, method, grid.dt());
    detail::run_grid(L, rho0, grid, step, [&](int k, const Eigen::VectorXcd& v) {
        Eigen::MatrixXcd rho(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) rho(a, b) = v(a * d + b);
        out.states[k] = std::move(rho);
    });
    return out;
}

inline TrackedTrajectory propagate_tracked(const Liouvillian& L, const Eigen::MatrixXcd& rho0,
                                           const TimeGrid& grid, Picture picture,
                                           std::vector<std::pair<int, int>> elements,
                                           Integrator method = Integrator::Rk4) {
    grid.validate();
    validate_initial_state(rho0, L.op_dim);
    TrackedTrajectory out;
    out.grid = grid;
    out.picture = picture;
    out.elements = std::move(elements);
    out.values.resize(grid.n_steps + 1);
    const int d = L.op_dim;
    auto step = detail::make_stepper(L, picture, method, grid.dt());
    detail::run_grid(L, rho0, grid, step, [&](int k, const Eigen::VectorXcd& v) {
        auto& row = out.values[k];
        row.reserve(out.elements.size());
        for (const auto& [a, b] : out.elements) row.push_back(v(a * d + b));
    });
    return out;
}

inline Complex observable(const Eigen::MatrixXcd& rho, const ModelBasis& basis,
                          const StateLabel& a, const StateLabel& b) {
    return rho(basis.index_of(a), basis.index_of(b));
}

struct DecayFit {
    double rate = 0.0;
    double r_squared = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    bool monotonic = true;  // false flags oscillatory transfer; fit still returned
};

// Least-squares slope of log|value| vs t over the window where |value| decays
// from 90% to 10% of its initial magnitude.
inline DecayFit fit_decay_rate(const std::vector<std::pair<double, Complex>>& series) {
    if (series.size() < 3) throw std::invalid_argument("fit_decay_rate: too few samples");
    const double v0 = std::abs(series.front().second);
    if (!(v0 > 0.0)) throw std::invalid_argument("fit_decay_rate: zero initial magnitude");

    DecayFit fit;
    std::vector<std::pair<double, double>> pts;  // (t, log|v|)
    double prev = v0;
    for (const auto& [t, v] : series) {
        const double mag = std::abs(v);
        if (mag > prev * (1.0 + 1e-12)) fit.monotonic = false;
        prev = mag;
        if (mag <= 0.9 * v0 && mag >= 0.1 * v0) pts.emplace_back(t, std::log(mag));
    }
    if (pts.size() < 3)
        throw std::invalid_argument("fit_decay_rate: decay window contains too few samples");

    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (const auto& [t, y] : pts) {
        st += t; sy += y; stt += t * t; sty += t * y; syy += y * y;
    }
    const double m = double(pts.size());
    const double slope = (m * sty - st * sy) / (m * stt - st * st);
    const double ss_tot = syy - sy * sy / m;
    double ss_res = 0.0;
    const double intercept = (sy - slope * st) / m;
    for (const auto& [t, y] : pts) {
        const double e = y - (slope * t + intercept);
        ss_res += e * e;
    }
    fit.rate = -slope;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.window_start = pts.front().first;
    fit.window_end = pts.back().first;
    return fit;
}

struct SteadyStateResult {
    int kernel_dim = 0;
    bool rank_warning = false;  // singular values within 10x of the threshold
    std::vector<Eigen::MatrixXcd> kernel_ops;   // orthonormal null-space matrices
    std::vector<Eigen::MatrixXcd> densities;    // trace-normalized where possible
};

inline SteadyStateResult steady_state(const Liouvillian& L, double threshold = 1e-10) {
    const int d = L.op_dim;
    Eigen::MatrixXcd m = Eigen::MatrixXcd(L.full());
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    SteadyStateResult out;
    for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) <= threshold) {
            ++out.kernel_dim;
            Eigen::VectorXcd v = svd.matrixV().col(k);
            Eigen::MatrixXcd op(d, d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) op(a, b) = v(a * d + b);
            const Complex tr = op.trace();
            if (std::abs(tr) > 1e-8) {
                Eigen::MatrixXcd rho = op / tr;
                rho = 0.5 * (rho + rho.adjoint().eval());
                out.densities.push_back(rho);
            }
            out.kernel_ops.push_back(std::move(op));
        } else if (sv(k) <= 10.0 * threshold) {
            out.rank_warning = true;
        }
    }
    return out;
}

}  // namespace vibpol
