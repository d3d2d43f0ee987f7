// bath.hpp — spectral function S(omega) and the five physical rates.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vibpol/model.hpp"

namespace vibpol {

// S(omega): either analytic ohmic-with-cutoff or a linearly interpolated table.
// Evaluable at any real omega, including omega <= 0; clamped outside the table.
class SpectralFunction {
public:
    static SpectralFunction ohmic(double eta, double cutoff) {
        if (eta < 0.0 || cutoff <= 0.0)
            throw std::invalid_argument("SpectralFunction: ohmic needs eta >= 0, cutoff > 0");
        SpectralFunction s;
        s.eta_ = eta;
        s.cutoff_ = cutoff;
        return s;
    }

    static SpectralFunction table(std::vector<std::pair<double, double>> samples) {
        if (samples.empty())
            throw std::invalid_argument("SpectralFunction: empty table");
        std::sort(samples.begin(), samples.end());
        for (const auto& [w, v] : samples)
            if (v < 0.0 || !std::isfinite(v))
                throw std::invalid_argument("SpectralFunction: S(omega) must be finite and >= 0");
        SpectralFunction s;
        s.table_ = std::move(samples);
        return s;
    }

    double operator()(double omega) const {
        if (table_.empty()) {
            // Ohmic with exponential cutoff; zero spectral weight at omega <= 0.
            if (omega <= 0.0) return 0.0;
            return eta_ * omega * std::exp(-omega / cutoff_);
        }
        if (omega <= table_.front().first) return table_.front().second;
        if (omega >= table_.back().first) return table_.back().second;
        auto hi = std::upper_bound(table_.begin(), table_.end(),
                                   std::make_pair(omega, 0.0),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        auto lo = hi - 1;
        const double t = (omega - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

private:
    SpectralFunction() = default;
    double eta_ = 0.0;
    double cutoff_ = 1.0;
    std::vector<std::pair<double, double>> table_;
};

struct RateSet {
    double gamma_a = 0.0;   // polariton absorption, - -> +
    double gamma_e = 0.0;   // polariton emission, + -> -
    double gamma_phi = 0.0; // pure dephasing, 2 S(0)
    double Gamma_a = 0.0;   // dark -> upper / lower -> dark absorption
    double Gamma_e = 0.0;   // upper -> dark / dark -> lower emission
};

inline std::optional<std::string> validate_rates(const RateSet& r) {
    const std::pair<const char*, double> fields[] = {
        {"gamma_a", r.gamma_a}, {"gamma_e", r.gamma_e}, {"gamma_phi", r.gamma_phi},
        {"Gamma_a", r.Gamma_a}, {"Gamma_e", r.Gamma_e}};
    for (const auto& [name, v] : fields) {
        if (!std::isfinite(v)) return std::string(name) + " not finite";
        if (v < 0.0) return std::string(name) + " negative";
    }
    return std::nullopt;
}

// gamma_phi = 2 S(0); Gamma_a = 2 S(-Omega_R/2), Gamma_e = 2 S(+Omega_R/2);
// gamma_a = 2 S(-Omega_R), gamma_e = 2 S(+Omega_R). Absorption rates sample
// negative frequencies.
inline RateSet rates_from_spectrum(const SpectralFunction& s, const ModelBasis& basis) {
    const double half = basis.frequency_tick();
    RateSet r;
    r.gamma_phi = 2.0 * s(0.0);
    r.Gamma_a = 2.0 * s(-half);
    r.Gamma_e = 2.0 * s(+half);
    r.gamma_a = 2.0 * s(-2.0 * half);
    r.gamma_e = 2.0 * s(+2.0 * half);
    if (auto err = validate_rates(r))
        throw std::invalid_argument("rates_from_spectrum: " + *err);
    return r;
}

}  // namespace vibpol
