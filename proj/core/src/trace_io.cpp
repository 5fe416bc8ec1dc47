#include "attctl/trace_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

constexpr const char* kHeader =
    "t qe_x qe_y qe_z qe_w w_x w_y w_z w_norm "
    "ucmd_x ucmd_y ucmd_z uact_x uact_y uact_z eu_x eu_y eu_z mode "
    "rho_1 rho_2 rho_3 eps_1 eps_2 eps_3 alpha_x alpha_y alpha_z "
    "v1 v2 s2 sat_1 sat_2 sat_3";
constexpr int kColumns = 34;

void append_num(std::string& out, double v, bool last = false) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    if (!last) out += ' ';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
    if (!out) throw parse_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_trace(const Trace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# config_hash " << trace.config_hash << "\n" << kHeader << "\n";
    std::string line;
    for (const TraceRecord& r : trace.records) {
        line.clear();
        append_num(line, r.t);
        append_num(line, r.q_e.qv.x);
        append_num(line, r.q_e.qv.y);
        append_num(line, r.q_e.qv.z);
        append_num(line, r.q_e.q0);
        append_num(line, r.omega.x);
        append_num(line, r.omega.y);
        append_num(line, r.omega.z);
        append_num(line, r.omega_norm);
        append_num(line, r.u_cmd.x);
        append_num(line, r.u_cmd.y);
        append_num(line, r.u_cmd.z);
        append_num(line, r.u_act.x);
        append_num(line, r.u_act.y);
        append_num(line, r.u_act.z);
        append_num(line, r.e_u.x);
        append_num(line, r.e_u.y);
        append_num(line, r.e_u.z);
        line += r.mode == 1 ? "1 " : "0 ";
        append_num(line, r.rho.x);
        append_num(line, r.rho.y);
        append_num(line, r.rho.z);
        append_num(line, r.eps.x);
        append_num(line, r.eps.y);
        append_num(line, r.eps.z);
        append_num(line, r.alpha.x);
        append_num(line, r.alpha.y);
        append_num(line, r.alpha.z);
        append_num(line, r.v1);
        append_num(line, r.v2);
        append_num(line, r.s2);
        line += r.saturated[0] ? "1 " : "0 ";
        line += r.saturated[1] ? "1 " : "0 ";
        line += r.saturated[2] ? '1' : '0';
        line += '\n';
        out << line;
    }
}

Trace read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open trace file: " + path);
    Trace trace;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# config_hash ", 0) != 0) {
        throw parse_error(path + ": missing config-hash line");
    }
    trace.config_hash = line.substr(std::string("# config_hash ").size());
    if (!std::getline(in, line) || line != kHeader) {
        throw parse_error(path + ": unexpected header row");
    }
    int lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        double col[kColumns];
        for (int i = 0; i < kColumns; ++i) {
            if (!(ss >> col[i])) {
                throw parse_error(path + ":" + std::to_string(lineno) + ": short/invalid row");
            }
        }
        TraceRecord r;
        r.t = col[0];
        r.q_e = {{col[1], col[2], col[3]}, col[4]};
        r.omega = {col[5], col[6], col[7]};
        r.omega_norm = col[8];
        r.u_cmd = {col[9], col[10], col[11]};
        r.u_act = {col[12], col[13], col[14]};
        r.e_u = {col[15], col[16], col[17]};
        r.mode = static_cast<int>(col[18]);
        r.rho = {col[19], col[20], col[21]};
        r.eps = {col[22], col[23], col[24]};
        r.alpha = {col[25], col[26], col[27]};
        r.v1 = col[28];
        r.v2 = col[29];
        r.s2 = col[30];
        r.saturated = {col[31] != 0.0, col[32] != 0.0, col[33] != 0.0};
        trace.records.push_back(r);
    }
    // Reconstruct the event sequence from the mode column; the transition
    // reason is not stored in the trace (it lives in the event-log file) and
    // is not needed by any analysis check.
    int prev_mode = 0;
    for (const TraceRecord& r : trace.records) {
        if (r.mode == 1 && prev_mode == 0) {
            trace.events.push_back({r.t, TriggerMode::kOn, TriggerReason::kEnvelope});
        } else if (r.mode == 0 && prev_mode == 1) {
            trace.events.push_back({r.t, TriggerMode::kOff, TriggerReason::kAct});
        }
        prev_mode = r.mode;
    }
    trace.summary.completed = true;
    return trace;
}

void recompute_summary(Trace& trace, const ScenarioConfig& config) {
    compute_summary(trace, config);
}

void write_events(const Trace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t transition reason\n";
    char buf[64];
    for (const TriggerEvent& e : trace.events) {
        std::snprintf(buf, sizeof buf, "%.17g", e.t);
        const char* reason = e.reason == TriggerReason::kAct
                                 ? "ACT"
                                 : (e.reason == TriggerReason::kPas ? "PAS" : "ENV");
        out << buf << ' ' << (e.to == TriggerMode::kOn ? "ON" : "OFF") << ' ' << reason << '\n';
    }
}

namespace {

std::string json_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s == "inf") return "1e308";
    if (s == "-inf") return "-1e308";
    if (s == "nan" || s == "-nan") return "null";
    return s;
}

void emit_report(std::ostream& out, const EnvelopeReport& r, const char* indent) {
    out << indent << "{\n"
        << indent << "  \"name\": \"" << r.name << "\",\n"
        << indent << "  \"intervals_checked\": " << r.intervals_checked << ",\n"
        << indent << "  \"samples_checked\": " << r.samples_checked << ",\n"
        << indent << "  \"violations\": " << r.violations << ",\n"
        << indent << "  \"max_violation\": " << json_num(r.max_violation) << ",\n"
        << indent << "  \"skipped\": " << (r.skipped ? "true" : "false") << ",\n"
        << indent << "  \"passed\": " << (r.passed() ? "true" : "false") << ",\n"
        << indent << "  \"diagnostic\": \"" << r.diagnostic << "\"\n"
        << indent << "}";
}

}  // namespace

void write_summary(const Trace& trace, const AnalysisReport* analysis, const std::string& path) {
    std::ofstream out = open_out(path);
    const SimSummary& s = trace.summary;
    out << "{\n"
        << "  \"config_hash\": \"" << trace.config_hash << "\",\n"
        << "  \"completed\": " << (s.completed ? "true" : "false") << ",\n"
        << "  \"failure_reason\": \"" << s.failure_reason << "\",\n"
        << "  \"settling_time_s\": " << json_num(s.settling_time) << ",\n"
        << "  \"terminal_error_deg\": " << json_num(s.terminal_error_deg) << ",\n"
        << "  \"late_max_qe\": " << json_num(s.late_max_qe) << ",\n"
        << "  \"max_omega_norm\": " << json_num(s.max_omega_norm) << ",\n"
        << "  \"t_max_omega\": " << json_num(s.t_max_omega) << ",\n"
        << "  \"max_alpha_norm\": " << json_num(s.max_alpha_norm) << ",\n"
        << "  \"alpha_budget\": " << json_num(s.alpha_budget) << ",\n"
        << "  \"on_events\": " << s.on_events << ",\n"
        << "  \"mean_update_rate_hz\": " << json_num(s.mean_update_rate_hz) << ",\n"
        << "  \"on_fraction\": " << json_num(s.on_fraction) << ",\n"
        << "  \"maneuver_window_s\": " << json_num(s.maneuver_window) << ",\n"
        << "  \"min_ceiling_gap\": " << json_num(s.min_ceiling_gap) << ",\n"
        << "  \"ceiling_respected\": " << (s.ceiling_respected ? "true" : "false") << ",\n"
        << "  \"funnel_containment\": " << (s.funnel_containment ? "true" : "false") << ",\n"
        << "  \"max_eps_abs\": " << json_num(s.max_eps_abs) << ",\n"
        << "  \"ku_violations\": " << s.ku_violations << ",\n"
        << "  \"saturated_steps\": " << s.saturated_steps << ",\n"
        << "  \"min_q0\": " << json_num(s.min_q0);
    if (analysis != nullptr) {
        out << ",\n  \"analysis\": {\n"
            << "    \"all_passed\": " << (analysis->all_passed ? "true" : "false") << ",\n"
            << "    \"constants\": {\n"
            << "      \"b1\": " << json_num(analysis->constants.b1) << ",\n"
            << "      \"b2\": " << json_num(analysis->constants.b2) << ",\n"
            << "      \"c1\": " << json_num(analysis->constants.c1) << ",\n"
            << "      \"c_eps\": " << json_num(analysis->constants.c_eps) << ",\n"
            << "      \"v_inf\": " << json_num(analysis->constants.v_inf) << ",\n"
            << "      \"a0\": " << json_num(analysis->constants.a0) << ",\n"
            << "      \"n_k\": " << json_num(analysis->constants.n_k) << ",\n"
            << "      \"q0_floor\": " << json_num(analysis->constants.q0_floor) << ",\n"
            << "      \"diag_c1_gt_beta\": "
            << (analysis->constants.diag_c1_gt_beta ? "true" : "false") << ",\n"
            << "      \"diag_ceps_gt_half_beta\": "
            << (analysis->constants.diag_ceps_gt_half_beta ? "true" : "false") << "\n"
            << "    },\n"
            << "    \"alpha_bounds\": {\n"
            << "      \"observed_max_alpha_dot\": "
            << json_num(analysis->alpha_bounds.observed_max_alpha_dot) << ",\n"
            << "      \"observed_max_alpha_ddot\": "
            << json_num(analysis->alpha_bounds.observed_max_alpha_ddot) << ",\n"
            << "      \"assumed_b_alpha\": " << json_num(analysis->alpha_bounds.assumed_b_alpha)
            << ",\n"
            << "      \"assumed_b_2alpha\": " << json_num(analysis->alpha_bounds.assumed_b_2alpha)
            << "\n    },\n"
            << "    \"checks\": [\n";
        for (size_t i = 0; i < analysis->checks.size(); ++i) {
            emit_report(out, analysis->checks[i], "      ");
            out << (i + 1 < analysis->checks.size() ? ",\n" : "\n");
        }
        out << "    ]\n  }";
    }
    out << "\n}\n";
}

void write_figure_data(const Trace& trace, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    char buf[32];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    std::ofstream f1 = open_out((fs::path(dir) / "fig1_attitude_error.dat").string());
    f1 << "t qe_1 qe_2 qe_3 rho_1 rho_2 rho_3\n";
    std::ofstream f2 = open_out((fs::path(dir) / "fig2_angular_velocity.dat").string());
    f2 << "t w_1 w_2 w_3 w_norm\n";
    std::ofstream f3 = open_out((fs::path(dir) / "fig3_control_torque.dat").string());
    f3 << "t uact_1 uact_2 uact_3 ucmd_1 ucmd_2 ucmd_3\n";
    std::ofstream f4 = open_out((fs::path(dir) / "fig4_trigger_mode.dat").string());
    f4 << "t mode\n";
    std::ofstream f5 = open_out((fs::path(dir) / "fig5_storage_ceiling.dat").string());
    f5 << "t v2 s2\n";

    for (const TraceRecord& r : trace.records) {
        f1 << num(r.t) << ' ' << num(r.q_e.qv.x) << ' ' << num(r.q_e.qv.y) << ' '
           << num(r.q_e.qv.z) << ' ' << num(r.rho.x) << ' ' << num(r.rho.y) << ' '
           << num(r.rho.z) << '\n';
        f2 << num(r.t) << ' ' << num(r.omega.x) << ' ' << num(r.omega.y) << ' '
           << num(r.omega.z) << ' ' << num(r.omega_norm) << '\n';
        f3 << num(r.t) << ' ' << num(r.u_act.x) << ' ' << num(r.u_act.y) << ' '
           << num(r.u_act.z) << ' ' << num(r.u_cmd.x) << ' ' << num(r.u_cmd.y) << ' '
           << num(r.u_cmd.z) << '\n';
        f4 << num(r.t) << ' ' << r.mode << '\n';
        f5 << num(r.t) << ' ' << num(r.v2) << ' ' << num(r.s2) << '\n';
    }
}

}  // namespace attctl
