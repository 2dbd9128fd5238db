// JSON (de)serialization of ModelParams. The document uses exactly the keys
// {"hbar","omega_s","g_s","omega_bath","capital_omega","n_modes",
//  "beta_hbar_omega","q0","p0"}; every value is an IEEE double.

#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "model.hpp"

namespace kerrdeco {

inline constexpr std::array<const char*, 9> params_json_keys = {
    "hbar", "omega_s", "g_s", "omega_bath", "capital_omega",
    "n_modes", "beta_hbar_omega", "q0", "p0"};

inline nlohmann::json params_to_json(const ModelParams& p) {
    return nlohmann::json{{"hbar", p.hbar},
                          {"omega_s", p.omega_s},
                          {"g_s", p.g_s},
                          {"omega_bath", p.omega_bath},
                          {"capital_omega", p.capital_omega},
                          {"n_modes", static_cast<double>(p.n_modes)},
                          {"beta_hbar_omega", p.beta_hbar_omega},
                          {"q0", p.r0.q},
                          {"p0", p.r0.p}};
}

inline ModelParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("parameter document must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : params_json_keys) known = known || item.key() == key;
        if (!known) throw std::invalid_argument("unknown parameter key: " + item.key());
    }
    const auto get = [&j](const char* key) -> double {
        if (!j.contains(key)) throw std::invalid_argument(std::string("missing parameter key: ") + key);
        if (!j.at(key).is_number()) throw std::invalid_argument(std::string("parameter must be numeric: ") + key);
        return j.at(key).get<double>();
    };

    ModelParams p;
    p.hbar = get("hbar");
    p.omega_s = get("omega_s");
    p.g_s = get("g_s");
    p.omega_bath = get("omega_bath");
    p.capital_omega = get("capital_omega");
    const double n = get("n_modes");
    if (!(n >= 0.0) || n != std::floor(n) || n > 1e9)
        throw std::invalid_argument("n_modes must be a non-negative integer");
    p.n_modes = static_cast<int>(n);
    p.beta_hbar_omega = get("beta_hbar_omega");
    p.r0 = {get("q0"), get("p0")};
    validate(p);
    return p;
}

inline ModelParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter file: " + path);
    nlohmann::json j;
    in >> j;
    return params_from_json(j);
}

}  // namespace kerrdeco
