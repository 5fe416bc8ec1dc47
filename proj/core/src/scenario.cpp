#include "attctl/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

using Setter = std::function<void(ScenarioConfig&, double)>;

// Single source of truth for the scenario key set: key → (setter, getter).
struct FieldAccess {
    Setter set;
    std::function<double(const ScenarioConfig&)> get;
};

const std::map<std::string, FieldAccess>& field_table() {
    static const std::map<std::string, FieldAccess> table = [] {
        std::map<std::string, FieldAccess> t;
        auto add = [&t](const std::string& key, auto member_ptr_chain_set,
                        auto member_ptr_chain_get) {
            t[key] = FieldAccess{member_ptr_chain_set, member_ptr_chain_get};
        };

        add("inertia.j1", [](ScenarioConfig& c, double v) { c.inertia_diag.x = v; },
            [](const ScenarioConfig& c) { return c.inertia_diag.x; });
        add("inertia.j2", [](ScenarioConfig& c, double v) { c.inertia_diag.y = v; },
            [](const ScenarioConfig& c) { return c.inertia_diag.y; });
        add("inertia.j3", [](ScenarioConfig& c, double v) { c.inertia_diag.z = v; },
            [](const ScenarioConfig& c) { return c.inertia_diag.z; });

        add("disturbance.omega_dis",
            [](ScenarioConfig& c, double v) { c.disturbance.omega_dis = v; },
            [](const ScenarioConfig& c) { return c.disturbance.omega_dis; });
        add("disturbance.scale", [](ScenarioConfig& c, double v) { c.disturbance.scale = v; },
            [](const ScenarioConfig& c) { return c.disturbance.scale; });
        add("disturbance.bound", [](ScenarioConfig& c, double v) { c.disturbance.bound = v; },
            [](const ScenarioConfig& c) { return c.disturbance.bound; });
        for (int i = 0; i < 9; ++i) {
            add("disturbance.amp" + std::to_string(i),
                [i](ScenarioConfig& c, double v) {
                    c.disturbance.amplitudes[static_cast<size_t>(i)] = v;
                },
                [i](const ScenarioConfig& c) {
                    return c.disturbance.amplitudes[static_cast<size_t>(i)];
                });
        }

        add("initial.qs_x", [](ScenarioConfig& c, double v) { c.q_s0.qv.x = v; },
            [](const ScenarioConfig& c) { return c.q_s0.qv.x; });
        add("initial.qs_y", [](ScenarioConfig& c, double v) { c.q_s0.qv.y = v; },
            [](const ScenarioConfig& c) { return c.q_s0.qv.y; });
        add("initial.qs_z", [](ScenarioConfig& c, double v) { c.q_s0.qv.z = v; },
            [](const ScenarioConfig& c) { return c.q_s0.qv.z; });
        add("initial.qs_w", [](ScenarioConfig& c, double v) { c.q_s0.q0 = v; },
            [](const ScenarioConfig& c) { return c.q_s0.q0; });
        add("initial.qd_x", [](ScenarioConfig& c, double v) { c.q_d.qv.x = v; },
            [](const ScenarioConfig& c) { return c.q_d.qv.x; });
        add("initial.qd_y", [](ScenarioConfig& c, double v) { c.q_d.qv.y = v; },
            [](const ScenarioConfig& c) { return c.q_d.qv.y; });
        add("initial.qd_z", [](ScenarioConfig& c, double v) { c.q_d.qv.z = v; },
            [](const ScenarioConfig& c) { return c.q_d.qv.z; });
        add("initial.qd_w", [](ScenarioConfig& c, double v) { c.q_d.q0 = v; },
            [](const ScenarioConfig& c) { return c.q_d.q0; });
        add("initial.omega_x", [](ScenarioConfig& c, double v) { c.omega0.x = v; },
            [](const ScenarioConfig& c) { return c.omega0.x; });
        add("initial.omega_y", [](ScenarioConfig& c, double v) { c.omega0.y = v; },
            [](const ScenarioConfig& c) { return c.omega0.y; });
        add("initial.omega_z", [](ScenarioConfig& c, double v) { c.omega0.z = v; },
            [](const ScenarioConfig& c) { return c.omega0.z; });

        // funnel.* sets all three axes; funnelN.* (N = 1..3) one axis.
        struct FK {
            const char* name;
            double PerfFunctionParams::* field;
        };
        static constexpr FK funnel_keys[] = {
            {"rho0", &PerfFunctionParams::rho0},
            {"rho_inf", &PerfFunctionParams::rho_inf},
            {"t_shift", &PerfFunctionParams::t_shift},
            {"f_scale", &PerfFunctionParams::f_scale},
        };
        for (const auto& fk : funnel_keys) {
            double PerfFunctionParams::* fp = fk.field;
            add(std::string("funnel.") + fk.name,
                [fp](ScenarioConfig& c, double v) {
                    for (auto& axis : c.funnel) axis.*fp = v;
                },
                [fp](const ScenarioConfig& c) { return c.funnel[0].*fp; });
            for (int axis = 0; axis < 3; ++axis) {
                add("funnel" + std::to_string(axis + 1) + "." + fk.name,
                    [fp, axis](ScenarioConfig& c, double v) {
                        c.funnel[static_cast<size_t>(axis)].*fp = v;
                    },
                    [fp, axis](const ScenarioConfig& c) {
                        return c.funnel[static_cast<size_t>(axis)].*fp;
                    });
            }
        }

        add("blf.k1", [](ScenarioConfig& c, double v) { c.blf.k1 = v; },
            [](const ScenarioConfig& c) { return c.blf.k1; });
        add("blf.f1", [](ScenarioConfig& c, double v) { c.blf.f1 = v; },
            [](const ScenarioConfig& c) { return c.blf.f1; });

        add("eval.s0", [](ScenarioConfig& c, double v) { c.eval.s0 = v; },
            [](const ScenarioConfig& c) { return c.eval.s0; });
        add("eval.s_inf", [](ScenarioConfig& c, double v) { c.eval.s_inf = v; },
            [](const ScenarioConfig& c) { return c.eval.s_inf; });

        add("controller.k_m", [](ScenarioConfig& c, double v) { c.controller.k_m = v; },
            [](const ScenarioConfig& c) { return c.controller.k_m; });
        add("controller.gamma", [](ScenarioConfig& c, double v) { c.controller.gamma = v; },
            [](const ScenarioConfig& c) { return c.controller.gamma; });
        add("controller.m_omega", [](ScenarioConfig& c, double v) { c.controller.m_omega = v; },
            [](const ScenarioConfig& c) { return c.controller.m_omega; });
        add("controller.k_u", [](ScenarioConfig& c, double v) { c.controller.k_u = v; },
            [](const ScenarioConfig& c) { return c.controller.k_u; });
        add("controller.k2", [](ScenarioConfig& c, double v) { c.controller.k2 = v; },
            [](const ScenarioConfig& c) { return c.controller.k2; });
        add("controller.dist_comp_mag",
            [](ScenarioConfig& c, double v) { c.controller.dist_comp_mag = v; },
            [](const ScenarioConfig& c) { return c.controller.dist_comp_mag; });
        add("controller.p", [](ScenarioConfig& c, double v) { c.controller.p = v; },
            [](const ScenarioConfig& c) { return c.controller.p; });
        add("controller.q0_min", [](ScenarioConfig& c, double v) { c.controller.q0_min = v; },
            [](const ScenarioConfig& c) { return c.controller.q0_min; });
        add("controller.u_max", [](ScenarioConfig& c, double v) { c.controller.u_max = v; },
            [](const ScenarioConfig& c) { return c.controller.u_max; });

        add("trigger.s", [](ScenarioConfig& c, double v) { c.trigger.s = v; },
            [](const ScenarioConfig& c) { return c.trigger.s; });
        add("trigger.beta",
            [](ScenarioConfig& c, double v) {
                c.trigger.beta = v;
                c.eval.k_rate = v;  // the ceiling decays at the trigger rate
            },
            [](const ScenarioConfig& c) { return c.trigger.beta; });
        add("trigger.m", [](ScenarioConfig& c, double v) { c.trigger.m = v; },
            [](const ScenarioConfig& c) { return c.trigger.m; });
        add("trigger.t_max", [](ScenarioConfig& c, double v) { c.trigger.t_max = v; },
            [](const ScenarioConfig& c) { return c.trigger.t_max; });
        add("trigger.delta_m", [](ScenarioConfig& c, double v) { c.trigger.delta_m = v; },
            [](const ScenarioConfig& c) { return c.trigger.delta_m; });

        add("analysis.b", [](ScenarioConfig& c, double v) { c.analysis.b = v; },
            [](const ScenarioConfig& c) { return c.analysis.b; });
        add("analysis.b_alpha", [](ScenarioConfig& c, double v) { c.analysis.b_alpha = v; },
            [](const ScenarioConfig& c) { return c.analysis.b_alpha; });
        add("analysis.b_2alpha", [](ScenarioConfig& c, double v) { c.analysis.b_2alpha = v; },
            [](const ScenarioConfig& c) { return c.analysis.b_2alpha; });
        add("analysis.q0_floor_apriori",
            [](ScenarioConfig& c, double v) { c.analysis.q0_floor_apriori = v; },
            [](const ScenarioConfig& c) { return c.analysis.q0_floor_apriori; });

        add("sim.dt", [](ScenarioConfig& c, double v) { c.dt = v; },
            [](const ScenarioConfig& c) { return c.dt; });
        add("sim.t_end", [](ScenarioConfig& c, double v) { c.t_end = v; },
            [](const ScenarioConfig& c) { return c.t_end; });
        add("sim.substeps",
            [](ScenarioConfig& c, double v) { c.substeps = static_cast<int>(v); },
            [](const ScenarioConfig& c) { return static_cast<double>(c.substeps); });
        add("sim.seed",
            [](ScenarioConfig& c, double v) { c.seed = static_cast<std::uint64_t>(v); },
            [](const ScenarioConfig& c) { return static_cast<double>(c.seed); });
        return t;
    }();
    return table;
}

void set_key(ScenarioConfig& config, const std::string& key, const std::string& value,
             const std::string& where) {
    const auto it = field_table().find(key);
    if (it == field_table().end()) {
        throw parse_error(where + ": unknown scenario key '" + key + "'");
    }
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        it->second.set(config, v);
    } catch (const std::exception&) {
        throw parse_error(where + ": malformed numeric value '" + value + "' for key '" + key +
                          "'");
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open scenario file: " + path);
    }
    ScenarioConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        set_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                path + ":" + std::to_string(lineno));
    }
    config.eval.k_rate = config.trigger.beta;
    return config;
}

void apply_override(ScenarioConfig& config, const std::string& key_equals_value) {
    const auto eq = key_equals_value.find('=');
    if (eq == std::string::npos) {
        throw parse_error("override must be key=value: " + key_equals_value);
    }
    set_key(config, trim(key_equals_value.substr(0, eq)),
            trim(key_equals_value.substr(eq + 1)), "--set " + key_equals_value);
}

void validate_config(const ScenarioConfig& config) {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw invalid_input_error(std::string("invalid scenario: ") + what);
    };
    require(config.inertia_diag.x > 0 && config.inertia_diag.y > 0 && config.inertia_diag.z > 0,
            "principal inertia moments must be positive");
    require(config.dt > 0, "sim.dt must be positive");
    require(config.t_end > config.dt, "sim.t_end must exceed sim.dt");
    require(config.substeps >= 1, "sim.substeps must be at least 1");
    for (const auto& f : config.funnel) {
        require(f.rho0 > f.rho_inf && f.rho_inf > 0, "funnel must satisfy rho0 > rho_inf > 0");
        require(f.f_scale > 0, "funnel f_scale must be positive");
    }
    require(config.blf.k1 > 0 && config.blf.f1 > 0, "barrier gains must be positive");
    require(config.eval.s0 > config.eval.s_inf && config.eval.s_inf > 0,
            "ceiling must satisfy s0 > s_inf > 0");
    require(config.eval.k_rate > 0, "ceiling decay rate must be positive");
    const auto& c = config.controller;
    // k2 may be zero here: the rate-loop feasibility gate (B2 > 0) owns that
    // boundary and reports it by name.
    require(c.k_m > 0 && c.gamma > 0 && c.m_omega > 0 && c.k_u > 0 && c.k2 >= 0 &&
                c.dist_comp_mag > 0 && c.p > 0 && c.q0_min > 0 && c.u_max > 0,
            "controller parameters must be strictly positive");
    const auto& tr = config.trigger;
    require(tr.s > 0 && tr.beta > 0 && tr.m > 0 && tr.t_max > 0 && tr.delta_m > 0,
            "trigger parameters must be strictly positive");
    require(std::fabs(config.q_s0.norm() - 1.0) < 1e-3 && std::fabs(config.q_d.norm() - 1.0) < 1e-3,
            "initial quaternions must be unit within 1e-3 (normalized exactly at run start)");
    if (tanh_dominance_margin(c.k_m, c.gamma, c.k_u) < 0.0) {
        throw infeasibility_error("tanh dominance margin >= 0",
                                  "k_m*tanh(gamma*x) fails to dominate x on [0, k_u]");
    }
    validate_disturbance_bound(config.disturbance);
}

std::string canonical_text(const ScenarioConfig& config) {
    std::string out;
    char buf[64];
    for (const auto& [key, access] : field_table()) {  // std::map ⇒ sorted keys
        std::snprintf(buf, sizeof buf, "%.17g", access.get(config));
        out += key;
        out += " = ";
        out += buf;
        out += '\n';
    }
    return out;
}

std::string config_hash(const ScenarioConfig& config) {
    const std::string text = canonical_text(config);
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace attctl
