#pragma once

// JSON serialization for quota systems (exact rationals as "p/q" strings) and
// parsing of random-run specifications.  Requires the vendored nlohmann
// json.hpp on the include path.

#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "random_complex.hpp"
#include "rational.hpp"

namespace quotatope {

inline nlohmann::json to_json(const ScalarQuotaSystem& sys) {
    nlohmann::json j;
    j["weights"] = nlohmann::json::array();
    for (const auto& w : sys.weights) j["weights"].push_back(to_string(w));
    j["quota"] = to_string(sys.quota);
    return j;
}

inline nlohmann::json to_json(const VectorQuotaSystem& sys) {
    nlohmann::json j;
    j["weights"] = nlohmann::json::array();
    for (const auto& row : sys.weights) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& w : row) jr.push_back(to_string(w));
        j["weights"].push_back(jr);
    }
    j["quota"] = nlohmann::json::array();
    for (const auto& q : sys.quota) j["quota"].push_back(to_string(q));
    return j;
}

inline ScalarQuotaSystem scalar_system_from_json(const nlohmann::json& j) {
    ScalarQuotaSystem sys;
    try {
        for (const auto& w : j.at("weights")) sys.weights.push_back(parse_rational(w.get<std::string>()));
        sys.quota = parse_rational(j.at("quota").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad quota-system JSON: ") + e.what());
    }
    return sys;
}

inline VectorQuotaSystem vector_system_from_json(const nlohmann::json& j) {
    VectorQuotaSystem sys;
    try {
        for (const auto& row : j.at("weights")) {
            std::vector<Rational> r;
            for (const auto& w : row) r.push_back(parse_rational(w.get<std::string>()));
            sys.weights.push_back(std::move(r));
        }
        for (const auto& q : j.at("quota")) sys.quota.push_back(parse_rational(q.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad quota-system JSON: ") + e.what());
    }
    return sys;
}

// Random-run specification:
// { "m": 1.0, "step": 0.001 (optional, default m/1000),
//   "densities": [ {"kind": "uniform",    "params": {"a": 1.0, "b": 2.0}},
//                  {"kind": "triangular", "params": {"a": 1.0, "apex": 1.5, "b": 2.0}},
//                  {"kind": "table",      "params": {"origin": 1.0, "values": [...]}} ],
//   "q_grid": [2.5, ...], "trials": 100000, "seed": 7 }
inline RandomQuotaSpec random_spec_from_json(const nlohmann::json& j) {
    RandomQuotaSpec spec;
    try {
        spec.m = j.at("m").get<double>();
        if (j.contains("step")) spec.step = j.at("step").get<double>();
        const double h = spec.effective_step();
        for (const auto& d : j.at("densities")) {
            const std::string kind = d.at("kind").get<std::string>();
            const auto& p = d.at("params");
            if (kind == "uniform") {
                spec.densities.push_back(
                    density_uniform(p.at("a").get<double>(), p.at("b").get<double>(), h));
            } else if (kind == "triangular") {
                spec.densities.push_back(density_triangular(
                    p.at("a").get<double>(), p.at("apex").get<double>(), p.at("b").get<double>(), h));
            } else if (kind == "table") {
                spec.densities.push_back(density_table(
                    p.at("origin").get<double>(), h, p.at("values").get<std::vector<double>>()));
            } else {
                throw input_error("unknown density kind: " + kind);
            }
        }
        spec.q_grid = j.at("q_grid").get<std::vector<double>>();
        if (j.contains("trials")) spec.trials = j.at("trials").get<long>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad random-spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

inline RandomQuotaSpec random_spec_from_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("random spec is not valid JSON");
    return random_spec_from_json(j);
}

}  // namespace quotatope
