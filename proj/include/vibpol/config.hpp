// config.hpp — run configuration parsing (JSON key-tree), initial-state
// construction, and trajectory CSV export.

#pragma once

#include "vibpol/bath.hpp"
#include "vibpol/dynamics.hpp"
#include "vibpol/generators.hpp"
#include "vibpol/model.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace vibpol {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field(std::move(field_path)) {}
};

struct OhmicSpec {
    double eta = 0.0;
    double cutoff = 1.0;
};

struct DynamicsConfig {
    double t_start = 0.0;
    double t_end = 10.0;
    int n_steps = 1000;
    Picture picture = Picture::Interaction;
    std::string initial_state = "plus";          // named spec, unless matrix given
    std::optional<Eigen::MatrixXcd> initial_matrix;
    std::vector<std::pair<std::string, std::string>> tracked;
};

struct OutputConfig {
    std::string format = "csv";  // csv | json
    std::string path;
};

struct RunConfig {
    ModelParams model;
    BathTopology topology = BathTopology::Common;
    Variant variant = Variant::Corrected;
    std::optional<RateSet> rates;
    std::optional<OhmicSpec> ohmic;
    std::optional<std::vector<std::pair<double, double>>> spectrum_table;
    DynamicsConfig dynamics;
    OutputConfig output;
};

inline StateLabel parse_state_label(const std::string& s, int n) {
    if (s == "plus" || s == "+") return StateLabel::plus();
    if (s == "minus" || s == "-") return StateLabel::minus();
    std::string num;
    if (s.rfind("dark:", 0) == 0) num = s.substr(5);
    else if (s.size() >= 2 && s[0] == 'd') num = s.substr(1);
    if (!num.empty()) {
        int d = 0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
        if (ec == std::errc() && p == num.data() + num.size() && d >= 1 && d < n)
            return StateLabel::darkstate(d);
    }
    throw ConfigError("state", "unrecognized state label '" + s + "'");
}

namespace detail {

template <typename T>
T require(const Json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(path + "." + key, e.what());
    }
}

}  // namespace detail

inline RunConfig parse_config(const Json& j) {
    RunConfig cfg;
    if (!j.contains("model")) throw ConfigError("model", "missing");
    const Json& jm = j.at("model");
    cfg.model.n_molecules = detail::require<int>(jm, "model", "n_molecules");
    cfg.model.omega0 = detail::require<double>(jm, "model", "omega0");
    cfg.model.rabi_splitting = detail::require<double>(jm, "model", "rabi_splitting");

    if (!j.contains("bath")) throw ConfigError("bath", "missing");
    const Json& jb = j.at("bath");
    const std::string topo = detail::require<std::string>(jb, "bath", "topology");
    if (topo == "common") cfg.topology = BathTopology::Common;
    else if (topo == "independent") cfg.topology = BathTopology::Independent;
    else throw ConfigError("bath.topology", "expected 'common' or 'independent'");

    const bool has_rates = jb.contains("rates");
    const bool has_spectrum = jb.contains("spectrum");
    if (has_rates == has_spectrum)
        throw ConfigError("bath", "exactly one of 'rates' or 'spectrum' must be present");
    if (has_rates) {
        const Json& jr = jb.at("rates");
        RateSet r;
        r.gamma_a = detail::require<double>(jr, "bath.rates", "gamma_a");
        r.gamma_e = detail::require<double>(jr, "bath.rates", "gamma_e");
        r.gamma_phi = detail::require<double>(jr, "bath.rates", "gamma_phi");
        r.Gamma_a = detail::require<double>(jr, "bath.rates", "Gamma_a");
        r.Gamma_e = detail::require<double>(jr, "bath.rates", "Gamma_e");
        if (auto err = validate_rates(r)) throw ConfigError("bath.rates", *err);
        cfg.rates = r;
    } else {
        const Json& js = jb.at("spectrum");
        if (js.contains("table")) {
            std::vector<std::pair<double, double>> table;
            for (const auto& row : js.at("table")) {
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError("bath.spectrum.table", "expected [omega, S] pairs");
                table.emplace_back(row[0].get<double>(), row[1].get<double>());
            }
            cfg.spectrum_table = std::move(table);
        } else if (js.contains("ohmic")) {
            OhmicSpec o;
            o.eta = detail::require<double>(js.at("ohmic"), "bath.spectrum.ohmic", "eta");
            o.cutoff = detail::require<double>(js.at("ohmic"), "bath.spectrum.ohmic", "cutoff");
            cfg.ohmic = o;
        } else {
            throw ConfigError("bath.spectrum", "expected 'table' or 'ohmic'");
        }
    }

    if (j.contains("variant")) {
        const std::string v = j.at("variant").get<std::string>();
        if (v == "corrected") cfg.variant = Variant::Corrected;
        else if (v == "dp") cfg.variant = Variant::Dp;
        else throw ConfigError("variant", "expected 'corrected' or 'dp'");
    }

    if (j.contains("dynamics")) {
        const Json& jd = j.at("dynamics");
        auto& d = cfg.dynamics;
        if (jd.contains("t_start")) d.t_start = jd.at("t_start").get<double>();
        if (jd.contains("t_end")) d.t_end = jd.at("t_end").get<double>();
        if (jd.contains("n_steps")) d.n_steps = jd.at("n_steps").get<int>();
        if (jd.contains("picture")) {
            const std::string p = jd.at("picture").get<std::string>();
            if (p == "schroedinger") d.picture = Picture::Schroedinger;
            else if (p == "interaction") d.picture = Picture::Interaction;
            else throw ConfigError("dynamics.picture", "expected 'schroedinger' or 'interaction'");
        }
        if (jd.contains("initial_state")) {
            const Json& js = jd.at("initial_state");
            if (js.is_string()) {
                d.initial_state = js.get<std::string>();
            } else if (js.is_array()) {
                const int dim = cfg.model.n_molecules + 1;
                if (int(js.size()) != dim)
                    throw ConfigError("dynamics.initial_state", "matrix must be (N+1)x(N+1)");
                Eigen::MatrixXcd rho(dim, dim);
                for (int a = 0; a < dim; ++a) {
                    if (int(js[a].size()) != dim)
                        throw ConfigError("dynamics.initial_state", "matrix must be (N+1)x(N+1)");
                    for (int b = 0; b < dim; ++b) {
                        const Json& e = js[a][b];
                        if (e.is_number()) rho(a, b) = Complex(e.get<double>(), 0.0);
                        else if (e.is_array() && e.size() == 2)
                            rho(a, b) = Complex(e[0].get<double>(), e[1].get<double>());
                        else
                            throw ConfigError("dynamics.initial_state",
                                              "entries must be numbers or [re, im]");
                    }
                }
                d.initial_matrix = std::move(rho);
            } else {
                throw ConfigError("dynamics.initial_state", "expected name or matrix");
            }
        }
        if (jd.contains("tracked")) {
            for (const auto& pair : jd.at("tracked")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ConfigError("dynamics.tracked", "expected [state, state] pairs");
                d.tracked.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
            }
        }
    }

    if (j.contains("output")) {
        const Json& jo = j.at("output");
        if (jo.contains("format")) cfg.output.format = jo.at("format").get<std::string>();
        if (jo.contains("path")) cfg.output.path = jo.at("path").get<std::string>();
        if (cfg.output.format != "csv" && cfg.output.format != "json")
            throw ConfigError("output.format", "expected 'csv' or 'json'");
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError("config", e.what());
    }
    return parse_config(j);
}

inline Json to_json(const RunConfig& cfg) {
    Json j;
    j["model"] = {{"n_molecules", cfg.model.n_molecules},
                  {"omega0", cfg.model.omega0},
                  {"rabi_splitting", cfg.model.rabi_splitting}};
    j["bath"]["topology"] = to_string(cfg.topology);
    if (cfg.rates) {
        j["bath"]["rates"] = {{"gamma_a", cfg.rates->gamma_a},
                              {"gamma_e", cfg.rates->gamma_e},
                              {"gamma_phi", cfg.rates->gamma_phi},
                              {"Gamma_a", cfg.rates->Gamma_a},
                              {"Gamma_e", cfg.rates->Gamma_e}};
    } else if (cfg.ohmic) {
        j["bath"]["spectrum"]["ohmic"] = {{"eta", cfg.ohmic->eta}, {"cutoff", cfg.ohmic->cutoff}};
    } else if (cfg.spectrum_table) {
        Json t = Json::array();
        for (const auto& [w, s] : *cfg.spectrum_table) t.push_back({w, s});
        j["bath"]["spectrum"]["table"] = t;
    }
    j["variant"] = to_string(cfg.variant);
    j["dynamics"] = {{"t_start", cfg.dynamics.t_start},
                     {"t_end", cfg.dynamics.t_end},
                     {"n_steps", cfg.dynamics.n_steps},
                     {"picture", cfg.dynamics.picture == Picture::Interaction ? "interaction"
                                                                              : "schroedinger"},
                     {"initial_state", cfg.dynamics.initial_state}};
    Json tracked = Json::array();
    for (const auto& [a, b] : cfg.dynamics.tracked) tracked.push_back({a, b});
    j["dynamics"]["tracked"] = tracked;
    j["output"] = {{"format", cfg.output.format}, {"path", cfg.output.path}};
    return j;
}

inline RateSet resolve_rates(const RunConfig& cfg, const ModelBasis& basis) {
    if (cfg.rates) return *cfg.rates;
    if (cfg.ohmic)
        return rates_from_spectrum(SpectralFunction::ohmic(cfg.ohmic->eta, cfg.ohmic->cutoff),
                                   basis);
    return rates_from_spectrum(SpectralFunction::table(*cfg.spectrum_table), basis);
}

inline Eigen::MatrixXcd build_initial_state(const DynamicsConfig& d, const ModelBasis& basis) {
    const int dim = basis.dim();
    if (d.initial_matrix) {
        validate_initial_state(*d.initial_matrix, dim);
        return *d.initial_matrix;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const std::string& s = d.initial_state;
    if (s == "plus_minus_superposition") {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(0) = psi(1) = 1.0 / std::sqrt(2.0);
        rho = psi * psi.adjoint();
    } else if (s == "maximally_mixed_excited") {
        rho = Eigen::MatrixXcd::Identity(dim, dim) / double(dim);
    } else {
        const int idx = basis.index_of(parse_state_label(s, basis.n()));
        rho(idx, idx) = 1.0;
    }
    return rho;
}

// Shortest-round-trip numeric text, capped at 17 significant digits.
inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

inline void write_trajectory_csv(std::ostream& os, const TrackedTrajectory& traj,
                                 const ModelBasis& basis) {
    os << "t";
    for (const auto& [a, b] : traj.elements) {
        const std::string name =
            "<" + basis.label(a).str() + "|rho|" + basis.label(b).str() + ">";
        os << ", re(" << name << "), im(" << name << ")";
    }
    os << "\n";
    for (int k = 0; k < int(traj.values.size()); ++k) {
        os << format_double(traj.grid.time(k));
        for (const Complex& v : traj.values[k])
            os << ", " << format_double(v.real()) << ", " << format_double(v.imag());
        os << "\n";
    }
}

}  // namespace vibpol
