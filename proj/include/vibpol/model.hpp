// model.hpp — polariton/dark eigenbasis of the single-excitation manifold.
//
// States are ordered Plus, Minus, Dark(1), ..., Dark(N-1). All transition
// frequencies are exact integer multiples of Omega_R/2 ("ticks"), so secular
// grouping is integer arithmetic, never tolerance-based.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vibpol {

using Complex = std::complex<double>;

struct ModelParams {
    int n_molecules = 0;       // N >= 2
    double omega0 = 0.0;       // vibration/cavity frequency (hbar = 1)
    double rabi_splitting = 0.0;  // Omega_R > 0, splitting between |+> and |->

    void validate() const {
        if (n_molecules < 2)
            throw std::invalid_argument("ModelParams: n_molecules must be >= 2");
        if (!(omega0 > 0.0))
            throw std::invalid_argument("ModelParams: omega0 must be positive");
        if (!(rabi_splitting > 0.0))
            throw std::invalid_argument("ModelParams: rabi_splitting must be positive");
    }
};

enum class StateKind { Plus, Minus, Dark };

// Tagged label: Plus | Minus | Dark(d), d a nonzero residue mod N.
struct StateLabel {
    StateKind kind = StateKind::Plus;
    int dark = 0;  // quasimomentum, meaningful iff kind == Dark

    static StateLabel plus() { return {StateKind::Plus, 0}; }
    static StateLabel minus() { return {StateKind::Minus, 0}; }
    static StateLabel darkstate(int d) { return {StateKind::Dark, d}; }

    bool operator==(const StateLabel&) const = default;

    std::string str() const {
        switch (kind) {
            case StateKind::Plus: return "+";
            case StateKind::Minus: return "-";
            default: return "d" + std::to_string(dark);
        }
    }
};

class ModelBasis {
public:
    explicit ModelBasis(ModelParams params) : params_(params) {
        params_.validate();
        const int n = params_.n_molecules;
        states_.reserve(n + 1);
        states_.push_back(StateLabel::plus());
        states_.push_back(StateLabel::minus());
        for (int d = 1; d < n; ++d) states_.push_back(StateLabel::darkstate(d));

        // <p|i> for site i = 1..N (row i-1).
        overlaps_.resize(n, n + 1);
        const double pol = 1.0 / std::sqrt(2.0 * n);
        const double drk = 1.0 / std::sqrt(double(n));
        const double theta = 2.0 * std::numbers::pi / n;
        for (int i = 1; i <= n; ++i) {
            overlaps_(i - 1, 0) = Complex(pol, 0.0);
            overlaps_(i - 1, 1) = Complex(-pol, 0.0);
            for (int d = 1; d < n; ++d)
                overlaps_(i - 1, 1 + d) = drk * std::exp(Complex(0.0, -theta * d * i));
        }
    }

    const ModelParams& params() const { return params_; }
    int n() const { return params_.n_molecules; }
    int dim() const { return params_.n_molecules + 1; }  // N+1 states
    const std::vector<StateLabel>& states() const { return states_; }

    // Omega_R/2, the exact unit of all transition frequencies.
    double frequency_tick() const { return 0.5 * params_.rabi_splitting; }

    int index_of(const StateLabel& s) const {
        switch (s.kind) {
            case StateKind::Plus: return 0;
            case StateKind::Minus: return 1;
            default:
                if (s.dark < 1 || s.dark >= n())
                    throw std::out_of_range("StateLabel: dark index out of range");
                return 1 + s.dark;
        }
    }

    const StateLabel& label(int idx) const { return states_.at(idx); }

    // Frequency offset from omega0 in ticks: +1 for |+>, -1 for |->, 0 for darks.
    int state_tick(int idx) const { return idx == 0 ? 1 : (idx == 1 ? -1 : 0); }

    double frequency(int idx) const {
        return params_.omega0 + state_tick(idx) * frequency_tick();
    }
    double frequency(const StateLabel& s) const { return frequency(index_of(s)); }

    // omega_p - omega_q in ticks; always one of {-2,-1,0,1,2}.
    int transition_ticks(int p, int q) const { return state_tick(p) - state_tick(q); }
    int transition_ticks(const StateLabel& p, const StateLabel& q) const {
        return transition_ticks(index_of(p), index_of(q));
    }
    double transition_frequency(int p, int q) const {
        return transition_ticks(p, q) * frequency_tick();
    }

    // u[i][p] = <p|i>, site i = 1..N.
    Complex overlap(int site, int state_idx) const {
        if (site < 1 || site > n()) throw std::out_of_range("overlap: site out of range");
        return overlaps_(site - 1, state_idx);
    }

    // Quasimomentum conjugate: d -> N - d.
    int conjugate_dark(int d) const {
        if (d < 1 || d >= n())
            throw std::out_of_range("conjugate_dark: d must be in [1, N-1]");
        return n() - d;
    }

private:
    ModelParams params_;
    std::vector<StateLabel> states_;
    Eigen::MatrixXcd overlaps_;
};

inline ModelBasis build_basis(const ModelParams& params) { return ModelBasis(params); }

}  // namespace vibpol
