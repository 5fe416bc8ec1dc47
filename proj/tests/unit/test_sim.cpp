#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "attctl/scenario.hpp"
#include "attctl/sim.hpp"
#include "attctl/trace_io.hpp"

using namespace attctl;

namespace {

const std::string kReference = std::string(ATTCTL_SCENARIO_DIR) + "/reference.scenario";

std::string file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("equilibrium stays at equilibrium") {
    ScenarioConfig c = load_scenario(kReference);
    c.q_s0 = c.q_d;  // zero initial attitude error
    c.omega0 = {};
    c.t_end = 2.0;
    SimEngine::Options opts;
    opts.disable_disturbance = true;
    const Trace trace = SimEngine(c, opts).run();
    REQUIRE(trace.summary.completed);
    for (const TraceRecord& r : trace.records) {
        CHECK(max_abs_component(r.q_e.qv) <= 1e-12);
        CHECK(norm(r.omega) <= 1e-12);
        CHECK(norm(r.u_cmd) <= 1e-12);
    }
}

TEST_CASE("identical configs give byte-identical traces") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 5.0;
    const Trace a = SimEngine(c).run();
    const Trace b = SimEngine(c).run();
    REQUIRE(a.summary.completed);
    write_trace(a, "/tmp/attctl_det_a.dat");
    write_trace(b, "/tmp/attctl_det_b.dat");
    CHECK(file_bytes("/tmp/attctl_det_a.dat") == file_bytes("/tmp/attctl_det_b.dat"));
    std::remove("/tmp/attctl_det_a.dat");
    std::remove("/tmp/attctl_det_b.dat");
}

TEST_CASE("input error resets to zero at every turn-on") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 20.0;  // long enough to include several re-energizations
    const Trace trace = SimEngine(c).run();
    REQUIRE(trace.summary.completed);
    int turn_ons = 0;
    for (size_t i = 1; i < trace.records.size(); ++i) {
        if (trace.records[i].mode == 1 && trace.records[i - 1].mode == 0) {
            ++turn_ons;
            CHECK(norm(trace.records[i].e_u) == 0.0);
        }
    }
    CHECK(turn_ons > 0);
    // de-energized rows hold exactly zero torque
    for (const TraceRecord& r : trace.records) {
        if (r.mode == 0) CHECK(norm(r.u_act) == 0.0);
    }
}

TEST_CASE("trace file round-trips records, hash, and summary") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 5.0;
    const Trace a = SimEngine(c).run();
    REQUIRE(a.summary.completed);
    write_trace(a, "/tmp/attctl_rt.dat");
    Trace b = read_trace("/tmp/attctl_rt.dat");
    CHECK(b.config_hash == a.config_hash);
    REQUIRE(b.records.size() == a.records.size());
    // re-serialization is byte-identical, so every field round-tripped exactly
    write_trace(b, "/tmp/attctl_rt2.dat");
    CHECK(file_bytes("/tmp/attctl_rt.dat") == file_bytes("/tmp/attctl_rt2.dat"));

    recompute_summary(b, c);
    CHECK(b.summary.max_omega_norm == doctest::Approx(a.summary.max_omega_norm).epsilon(1e-15));
    CHECK(b.summary.on_events == a.summary.on_events);
    CHECK(b.summary.on_fraction == doctest::Approx(a.summary.on_fraction).epsilon(1e-12));
    CHECK(b.summary.min_ceiling_gap ==
          doctest::Approx(a.summary.min_ceiling_gap).epsilon(1e-12));
    CHECK(b.summary.saturated_steps == a.summary.saturated_steps);
    std::remove("/tmp/attctl_rt.dat");
    std::remove("/tmp/attctl_rt2.dat");
}

TEST_CASE("halving the integrator substep barely moves the state at t = 60") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 60.0;
    const Trace coarse = SimEngine(c).run();
    c.substeps = 2;
    const Trace fine = SimEngine(c).run();
    REQUIRE(coarse.summary.completed);
    REQUIRE(fine.summary.completed);
    const TraceRecord& a = coarse.records.back();
    const TraceRecord& b = fine.records.back();
    REQUIRE(a.t == doctest::Approx(60.0));
    REQUIRE(b.t == doctest::Approx(60.0));
    CHECK(std::fabs(a.q_e.qv.x - b.q_e.qv.x) <= 1e-6);
    CHECK(std::fabs(a.q_e.qv.y - b.q_e.qv.y) <= 1e-6);
    CHECK(std::fabs(a.q_e.qv.z - b.q_e.qv.z) <= 1e-6);
    CHECK(std::fabs(a.q_e.q0 - b.q_e.q0) <= 1e-6);
}

TEST_CASE("quaternion norm stays unit across the whole episode") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 5.0;
    const Trace trace = SimEngine(c).run();
    for (const TraceRecord& r : trace.records) {
        CHECK(std::fabs(r.q_e.norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("summary flags containment and the ceiling on a healthy run") {
    ScenarioConfig c = load_scenario(kReference);
    c.t_end = 5.0;
    const Trace trace = SimEngine(c).run();
    CHECK(trace.summary.funnel_containment);
    CHECK(trace.summary.ceiling_respected);
    CHECK(trace.summary.min_ceiling_gap > 0.0);
    CHECK(trace.summary.min_q0 > 0.5);
    CHECK(trace.summary.ku_violations == 0);
}
